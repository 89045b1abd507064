import hashlib
import sys
from pathlib import Path

import numpy as np
import pytest

# make the per-word reference implementations importable from any test
sys.path.insert(0, str(Path(__file__).resolve().parent))

FIXTURE_BITS = 1_000_000

# digests of the packed fixture bytes, pinned when the expected-value
# snapshot was frozen; a digest change means the generated bits moved
FIXTURE_SHA256 = {
    "e": "7ae61691f949a9a92d5ed8b65722bfcf0179964064d5f2c7e2a971b32ac97d49",
    "pi": "e31af8c5229974786fbac6931fb44f8596d4466eaa853f40df458fd352453155",
}


def expansion_bits(value, nbits: int) -> np.ndarray:
    """First nbits of the binary expansion (integer part included)."""
    import mpmath

    ibits = int(value).bit_length()
    scaled = int(mpmath.floor(mpmath.ldexp(value, nbits - ibits)))
    digits = bin(scaled)[2:]
    assert len(digits) == nbits
    return np.frombuffer(digits.encode(), dtype=np.uint8) - ord("0")


def _constant_bits(name: str) -> np.ndarray:
    import mpmath

    mpmath.mp.prec = FIXTURE_BITS + 64
    value = {"e": mpmath.e + 0, "pi": mpmath.pi + 0}[name]
    bits = expansion_bits(value, FIXTURE_BITS)
    from drtbench.sts import bits_to_bytes

    digest = hashlib.sha256(bits_to_bytes(bits)).hexdigest()
    assert digest == FIXTURE_SHA256[name], f"{name} fixture drifted: {digest}"
    return bits


@pytest.fixture(scope="session")
def e_bits() -> np.ndarray:
    return _constant_bits("e")


@pytest.fixture(scope="session")
def pi_bits() -> np.ndarray:
    return _constant_bits("pi")
