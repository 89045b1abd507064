"""Bit-level view of keystream bytes and partitioning into test sequences.

Bit order follows the statistical suite's file convention: the most
significant bit of each byte comes first.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Iterable, Iterator

import numpy as np

from drtbench.errors import ParameterError


def bytes_to_bits(data: bytes) -> np.ndarray:
    """Unpack bytes into a uint8 0/1 array, MSB of each byte first."""
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))


def bits_to_bytes(bits: np.ndarray) -> bytes:
    """Pack a 0/1 array (length divisible by 8) back into bytes."""
    if len(bits) % 8:
        raise ParameterError("bit count must be a multiple of 8 to serialize")
    return np.packbits(bits.astype(np.uint8)).tobytes()


class BitStream:
    """A re-readable byte source addressed as bits.

    Construct from in-memory bytes, a file, or a factory returning a fresh
    chunk iterator; the factory form lets keystreams feed the suite without
    ever materializing the whole stream.
    """

    def __init__(self, chunk_factory: Callable[[], Iterable[bytes]], total_bytes: int):
        if total_bytes < 1:
            raise ParameterError("bit stream must contain at least one byte")
        self._factory = chunk_factory
        self.total_bytes = total_bytes

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitStream":
        return cls(lambda: (data,), len(data))

    @classmethod
    def from_file(cls, path: str | Path, chunk_bytes: int = 1 << 20) -> "BitStream":
        path = Path(path)
        size = path.stat().st_size

        def factory():
            with open(path, "rb") as fh:
                while True:
                    chunk = fh.read(chunk_bytes)
                    if not chunk:
                        return
                    yield chunk

        return cls(factory, size)

    @property
    def total_bits(self) -> int:
        return 8 * self.total_bytes

    def iter_bytes(self) -> Iterator[bytes]:
        emitted = 0
        for chunk in self._factory():
            emitted += len(chunk)
            yield chunk
        if emitted != self.total_bytes:
            raise ParameterError(
                f"stream produced {emitted} bytes, declared {self.total_bytes}"
            )

    def to_bytes(self) -> bytes:
        return b"".join(self.iter_bytes())

    def sequence_count(self, sequence_bits: int, cap: int | None = None) -> int:
        count = self.total_bits // sequence_bits
        if cap is not None:
            count = min(count, cap)
        return count

    def iter_sequences(
        self, sequence_bits: int, cap: int | None = None
    ) -> Iterator[np.ndarray]:
        """Yield consecutive sequences of exactly sequence_bits bits.

        Leftover bits after the last whole sequence are discarded.  Raises
        when the stream is shorter than a single sequence.
        """
        if sequence_bits < 1:
            raise ParameterError("sequence length must be >= 1 bit")
        total = self.sequence_count(sequence_bits, cap)
        if total == 0:
            raise ParameterError(
                f"stream has {self.total_bits} bits, shorter than one "
                f"sequence of {sequence_bits}"
            )
        produced = 0
        pending = np.empty(0, dtype=np.uint8)
        for chunk in self.iter_bytes():
            if produced >= total:
                break
            pending = np.concatenate([pending, bytes_to_bits(chunk)])
            while len(pending) >= sequence_bits and produced < total:
                yield pending[:sequence_bits]
                pending = pending[sequence_bits:]
                produced += 1


def partition(
    stream: BitStream, sequence_bits: int, cap: int | None = None
) -> list[np.ndarray]:
    """Materialize the stream's sequences (see BitStream.iter_sequences)."""
    return list(stream.iter_sequences(sequence_bits, cap))
