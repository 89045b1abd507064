"""Public keystream interface: variants + (key, iv) in, bytes out."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from drtbench.ciphers.streams import IV_BYTES, KEY_BYTES, STREAM_CLASSES
from drtbench.ciphers.variants import CipherVariant
from drtbench.errors import ParameterError

DEFAULT_CHUNK = 1 << 20


@dataclass(frozen=True)
class KeyIv:
    """Key and iv bytes; lengths are validated against the cipher in use."""

    key: bytes
    iv: bytes

    @classmethod
    def from_hex(cls, key_hex: str, iv_hex: str) -> "KeyIv":
        return cls(bytes.fromhex(key_hex), bytes.fromhex(iv_hex))


def new_stream(variant: CipherVariant, kiv: KeyIv):
    """Construct a positioned-at-zero keystream generator."""
    cls = STREAM_CLASSES[variant.cipher]
    return cls(kiv.key, kiv.iv, variant)


def keystream(variant: CipherVariant, kiv: KeyIv, length: int) -> bytes:
    """The first `length` keystream bytes for (variant, key, iv)."""
    if length < 1:
        raise ParameterError("keystream length must be >= 1 byte")
    return new_stream(variant, kiv).read(length)


def keystream_chunks(
    variant: CipherVariant, kiv: KeyIv, length: int, chunk_size: int = DEFAULT_CHUNK
) -> Iterator[bytes]:
    """Yield the keystream in chunks without buffering the whole output."""
    if length < 1:
        raise ParameterError("keystream length must be >= 1 byte")
    if chunk_size < 1:
        raise ParameterError("chunk size must be >= 1 byte")
    stream = new_stream(variant, kiv)
    remaining = length
    while remaining > 0:
        take = min(chunk_size, remaining)
        yield stream.read(take)
        remaining -= take


def key_iv_lengths(cipher: str) -> tuple[int, int]:
    return KEY_BYTES, IV_BYTES[cipher]
