"""Per-site mixing strategies for the three keystream generators.

Every place a cipher rotates a whole 32-bit word is a *site*.  A variant
assigns each site either the cipher's original rotation amount or an
(a, b) shift pair; the pair is always applied in the canonical form
(x << a) ^ (x >> b) no matter which direction the original rotation had.

Canonical site order (one strategy per entry):

  hc128   f1 first, f1 second, f2 first, f2 second, g1 x-term, g1 z-term,
          g1 y-term.  The mirror function g2 is not an independent site:
          it reuses the g1 strategies mirrored (rotations flip direction,
          shift pairs swap to (b, a)).
  rabbit  even-word g_{j-1} term, even-word g_{j-2} term, odd-word
          g_{j-1} term (all in the state update), counter word in key setup.
  salsa20 the four quarter-round amounts 7, 9, 13, 18 in firing order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from drtbench.core.types import Rot, ShiftPair, WordSpec
from drtbench.errors import ParameterError

WORD32 = WordSpec(5)

MixStrategy = Union[Rot, ShiftPair]

CIPHER_IDS = ("hc128", "rabbit", "salsa20")

# (site name, rotation direction in the reference cipher, reference amount)
SITE_TABLES = {
    "hc128": (
        ("f1.rot7", "right", 7),
        ("f1.rot18", "right", 18),
        ("f2.rot17", "right", 17),
        ("f2.rot19", "right", 19),
        ("g1.x", "right", 10),
        ("g1.z", "right", 23),
        ("g1.y", "right", 8),
    ),
    "rabbit": (
        ("next.even_near", "left", 16),
        ("next.even_far", "left", 16),
        ("next.odd_near", "left", 8),
        ("setup.counter", "left", 16),
    ),
    "salsa20": (
        ("qr.step1", "left", 7),
        ("qr.step2", "left", 9),
        ("qr.step3", "left", 13),
        ("qr.step4", "left", 18),
    ),
}

# replacement shift pairs, positionally bound to the site tables above
DRT_PAIRS = {
    "hc128": ((4, 4), (7, 1), (8, 8), (15, 1), (6, 10), (3, 13), (2, 6)),
    "rabbit": ((4, 12), (11, 5), (3, 5), (3, 13)),
    "salsa20": ((4, 4), (6, 2), (10, 6), (12, 4)),
}


def _check_cipher(cipher: str) -> str:
    if cipher not in CIPHER_IDS:
        raise ParameterError(f"unknown cipher {cipher!r}; expected one of {CIPHER_IDS}")
    return cipher


@dataclass(frozen=True)
class CipherVariant:
    """A cipher id plus one mixing strategy per rotation site."""

    cipher: str
    sites: tuple[MixStrategy, ...]

    def __post_init__(self):
        _check_cipher(self.cipher)
        expected = len(SITE_TABLES[self.cipher])
        if len(self.sites) != expected:
            raise ParameterError(
                f"{self.cipher} has {expected} rotation sites, got {len(self.sites)}"
            )
        for strategy in self.sites:
            if isinstance(strategy, Rot):
                strategy.validate_for(WORD32)
            elif isinstance(strategy, ShiftPair):
                strategy.validate_for(WORD32)
            else:
                raise ParameterError(f"not a mixing strategy: {strategy!r}")

    @property
    def tag(self) -> str:
        return "drt" if any(isinstance(s, ShiftPair) for s in self.sites) else "rot"

    def site_names(self) -> tuple[str, ...]:
        return tuple(name for name, _, _ in SITE_TABLES[self.cipher])


def standard_variant(cipher: str) -> CipherVariant:
    """Every site rotates by its reference amount (the published cipher)."""
    table = SITE_TABLES[_check_cipher(cipher)]
    return CipherVariant(cipher, tuple(Rot(amount) for _, _, amount in table))


def drt_variant(cipher: str) -> CipherVariant:
    """Every site uses its replacement shift pair."""
    pairs = DRT_PAIRS[_check_cipher(cipher)]
    return CipherVariant(cipher, tuple(ShiftPair(a, b) for a, b in pairs))


def variant_by_tag(cipher: str, tag: str) -> CipherVariant:
    if tag == "rot":
        return standard_variant(cipher)
    if tag == "drt":
        return drt_variant(cipher)
    raise ParameterError(f"unknown variant tag {tag!r}; expected 'rot' or 'drt'")


def mirror_strategy(strategy: MixStrategy) -> MixStrategy:
    """Flip a strategy for a site whose reference rotation runs the other way."""
    if isinstance(strategy, Rot):
        return strategy
    return ShiftPair(strategy.b, strategy.a)


# kernel-level encoding of a resolved site: (kind, p1, p2)
KIND_ROTL = 0
KIND_ROTR = 1
KIND_DRT = 2


def resolve_site(strategy: MixStrategy, direction: str) -> tuple[int, int, int]:
    """Turn (strategy, site direction) into a (kind, p1, p2) kernel triple."""
    if isinstance(strategy, Rot):
        kind = KIND_ROTL if direction == "left" else KIND_ROTR
        return (kind, strategy.c, 0)
    return (KIND_DRT, strategy.a, strategy.b)


def resolve_sites(
    strategies: Iterable[MixStrategy], directions: Iterable[str]
) -> list[tuple[int, int, int]]:
    return [resolve_site(s, d) for s, d in zip(strategies, directions)]
