"""Word widths, shift pairs, and map descriptors for the bit operators.

Bit numbering convention: bit 0 is the least significant bit of a word,
so an n-bit word x is the vector (x_{n-1} ... x_1 x_0).
"""

from __future__ import annotations

from dataclasses import dataclass

from drtbench.errors import ParameterError

SUPPORTED_EXPONENTS = (3, 4, 5, 6)


@dataclass(frozen=True)
class WordSpec:
    """Width of the operand word: n = 2**m bits."""

    m: int

    def __post_init__(self):
        if self.m not in SUPPORTED_EXPONENTS:
            raise ParameterError(
                f"word exponent m must be one of {SUPPORTED_EXPONENTS}, got {self.m}"
            )

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def mask(self) -> int:
        return (1 << self.n) - 1

    def check_word(self, x: int) -> int:
        if not 0 <= x <= self.mask:
            raise ParameterError(f"word 0x{x:x} does not fit in {self.n} bits")
        return x


class ShiftPair:
    """A checked (a, b) shift pair with a + b = 2**k.

    The checked constructor enforces the operator family: a >= 1, b >= 1 and
    a + b an exact power of two with k >= 2.  Whether the pair fits a given
    word width (k <= m - 1, i.e. a + b <= n/2) is checked against a WordSpec
    via :meth:`validate_for`.  ``ShiftPair.unchecked`` skips all of this and
    exists only so that deliberately broken pairs can be probed.
    """

    __slots__ = ("a", "b", "checked")

    def __init__(self, a: int, b: int):
        if a < 1 or b < 1:
            raise ParameterError("shift amounts a and b must both be >= 1")
        s = a + b
        if s & (s - 1) != 0 or s < 4:
            raise ParameterError(
                f"a + b must equal 2**k with k >= 2; got a + b = {s}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "checked", True)

    @classmethod
    def unchecked(cls, a: int, b: int) -> "ShiftPair":
        """Build a pair without family validation (negative testing only)."""
        if a < 0 or b < 0:
            raise ParameterError("shift amounts must be non-negative")
        pair = object.__new__(cls)
        object.__setattr__(pair, "a", a)
        object.__setattr__(pair, "b", b)
        object.__setattr__(pair, "checked", False)
        return pair

    def __setattr__(self, name, value):
        raise AttributeError("ShiftPair is immutable")

    @property
    def k(self) -> int:
        s = self.a + self.b
        return s.bit_length() - 1 if s and s & (s - 1) == 0 else -1

    def validate_for(self, spec: WordSpec) -> "ShiftPair":
        if not self.checked:
            raise ParameterError(
                f"unchecked pair ({self.a}, {self.b}) cannot be validated"
            )
        if self.k > spec.m - 1:
            raise ParameterError(
                f"a + b must equal 2**k < n with k <= m - 1 = {spec.m - 1}; "
                f"got a + b = {self.a + self.b} at n = {spec.n}"
            )
        return self

    def __eq__(self, other):
        return (
            isinstance(other, ShiftPair)
            and (self.a, self.b, self.checked) == (other.a, other.b, other.checked)
        )

    def __hash__(self):
        return hash((self.a, self.b, self.checked))

    def __repr__(self):
        tag = "" if self.checked else ", unchecked"
        return f"ShiftPair({self.a}, {self.b}{tag})"


@dataclass(frozen=True)
class Rot:
    """Descriptor of a left rotation by c bits."""

    c: int

    def validate_for(self, spec: WordSpec) -> "Rot":
        if not 0 <= self.c < spec.n:
            raise ParameterError(
                f"rotation amount must satisfy 0 <= c < {spec.n}, got {self.c}"
            )
        return self


@dataclass(frozen=True)
class Drt:
    """Descriptor of the two-shift dispersing map y = (x << a) ^ (x >> b).

    Unlike ShiftPair this carries no family constraint, so singular
    parameterizations can be constructed and analyzed.
    """

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ParameterError("shift amounts must be non-negative")

    @classmethod
    def from_pair(cls, pair: ShiftPair) -> "Drt":
        return cls(pair.a, pair.b)


MapDescriptor = Rot | Drt | ShiftPair


def as_descriptor(op: MapDescriptor) -> Rot | Drt:
    """Normalize a ShiftPair into a Drt descriptor."""
    if isinstance(op, ShiftPair):
        return Drt(op.a, op.b)
    if isinstance(op, (Rot, Drt)):
        return op
    raise ParameterError(f"not a map descriptor: {op!r}")
