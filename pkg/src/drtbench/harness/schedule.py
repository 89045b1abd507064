"""Key/IV schedules for the quality experiments.

Five initialization methods, 24 cases each: single set bit sweeps over the
first/middle/last key byte paired with an iv byte (method 1), the bytewise
complement of those (method 2), zero or all-ones keys with only the iv byte
swept (methods 3 and 4), and a fixed table of random key/iv series
(method 5, shipped as package data).
"""

from __future__ import annotations

import hashlib
import importlib.resources
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from drtbench.ciphers import key_iv_lengths
from drtbench.ciphers.variants import CIPHER_IDS
from drtbench.errors import FixtureError, ParameterError

METHODS = (1, 2, 3, 4, 5)

KEY_SWEEP = (0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80)
IV_SWEEP = (0x10, 0x20, 0x40, 0x80, 0x01, 0x02, 0x04, 0x08)

# (u, v) byte positions: first, middle, last of key and iv
POSITIONS = {
    "hc128": ((0, 0), (8, 8), (15, 15)),
    "rabbit": ((0, 0), (8, 4), (15, 7)),
    "salsa20": ((0, 0), (8, 4), (15, 7)),
}

FIXTURE_ENV_VAR = "DRTBENCH_FIXTURES"
FIXTURE_SHA256 = "0a89e2ebc696bd418e9bee2a686584d915350ac251943dfbcc4f8073aef2fa5f"


@dataclass(frozen=True)
class TestCase:
    cipher: str
    variant_tag: str
    method: int
    index: int
    key: bytes
    iv: bytes
    u: Optional[int] = None
    v: Optional[int] = None

    @property
    def label(self) -> str:
        if self.method == 5:
            return f"series {self.index + 1}"
        if self.u is None:
            return f"v={self.v}, IV[v]=0x{self.iv[self.v]:02X}"
        return (
            f"u={self.u}, v={self.v}, "
            f"Key[u]=0x{self.key[self.u]:02X}, IV[v]=0x{self.iv[self.v]:02X}"
        )


def _complement(data: bytes) -> bytes:
    return bytes(b ^ 0xFF for b in data)


@dataclass(frozen=True)
class FixtureEntry:
    index: int
    key: bytes
    iv: bytes


def fixture_path(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(FIXTURE_ENV_VAR)
    if env:
        return Path(env)
    resource = importlib.resources.files("drtbench").joinpath(
        "data/random_series.txt"
    )
    return Path(str(resource))


def load_fixtures(path: str | os.PathLike | None = None) -> list[FixtureEntry]:
    """Parse the 24 random key/iv series; tolerant of spacing and hex case."""
    p = fixture_path(path)
    if not p.exists():
        raise FixtureError(f"fixture file not found: {p}")
    entries: list[FixtureEntry] = []
    index: Optional[int] = None
    key: Optional[bytes] = None
    for raw in p.read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered.startswith("key"):
            if index is None:
                raise FixtureError("key line before any index line")
            key = _parse_hex_bytes(line[3:], p)
        elif lowered.startswith("iv"):
            if index is None or key is None:
                raise FixtureError("iv line without preceding index and key")
            iv = _parse_hex_bytes(line[2:], p)
            entries.append(FixtureEntry(index, key, iv))
            index, key = None, None
        else:
            try:
                index = int(line)
            except ValueError as exc:
                raise FixtureError(f"unexpected line in {p}: {raw!r}") from exc
    if len(entries) != 24:
        raise FixtureError(f"expected 24 fixture entries, found {len(entries)}")
    if entries[0].key[:4] != bytes.fromhex("F2A796D2") or entries[0].iv[
        :4
    ] != bytes.fromhex("7D1425A4"):
        raise FixtureError("fixture entry 1 does not start with the known bytes")
    return entries


def _parse_hex_bytes(text: str, source: Path) -> bytes:
    data = bytes.fromhex(text.replace(" ", ""))
    if len(data) != 16:
        raise FixtureError(f"expected 16 hex bytes in {source}, got {len(data)}")
    return data


def fixtures_digest(entries: list[FixtureEntry]) -> str:
    blob = b"".join(e.key + e.iv for e in entries)
    return hashlib.sha256(blob).hexdigest()


def verify_fixtures(entries: list[FixtureEntry]) -> None:
    digest = fixtures_digest(entries)
    if digest != FIXTURE_SHA256:
        raise FixtureError(
            f"fixture digest {digest} does not match the pinned {FIXTURE_SHA256}"
        )


def schedule(
    method: int,
    cipher: str,
    variant_tag: str = "rot",
    fixtures: list[FixtureEntry] | None = None,
) -> list[TestCase]:
    """The 24 test cases of one method for one cipher."""
    if cipher not in CIPHER_IDS:
        raise ParameterError(f"unknown cipher {cipher!r}")
    if method not in METHODS:
        raise ParameterError(f"method must be in {METHODS}, got {method}")
    key_len, iv_len = key_iv_lengths(cipher)
    cases: list[TestCase] = []

    if method in (1, 2):
        for p_idx, (u, v) in enumerate(POSITIONS[cipher]):
            for s_idx, (kb, vb) in enumerate(zip(KEY_SWEEP, IV_SWEEP)):
                key = bytearray(key_len)
                iv = bytearray(iv_len)
                key[u] = kb
                iv[v] = vb
                key, iv = bytes(key), bytes(iv)
                if method == 2:
                    key, iv = _complement(key), _complement(iv)
                cases.append(
                    TestCase(cipher, variant_tag, method, p_idx * 8 + s_idx,
                             key, iv, u=u, v=v)
                )
    elif method in (3, 4):
        key = bytes(key_len) if method == 3 else b"\xff" * key_len
        sweep = IV_SWEEP if method == 3 else tuple(b ^ 0xFF for b in IV_SWEEP)
        fill = 0x00 if method == 3 else 0xFF
        for p_idx, (_, v) in enumerate(POSITIONS[cipher]):
            for s_idx, vb in enumerate(sweep):
                iv = bytearray([fill] * iv_len)
                iv[v] = vb
                cases.append(
                    TestCase(cipher, variant_tag, method, p_idx * 8 + s_idx,
                             key, bytes(iv), u=None, v=v)
                )
    else:
        entries = fixtures if fixtures is not None else load_fixtures()
        verify_fixtures(entries)
        for i, entry in enumerate(entries):
            cases.append(
                TestCase(cipher, variant_tag, method, i, entry.key,
                         entry.iv[:iv_len])
            )
    return cases
