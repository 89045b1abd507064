"""Exact word operators and their GF(2) analysis.

Two families are implemented: the cyclic rotation ROT(x, c) and the
dispersing two-shift map DRT(x, a, b) = (x << a) ^ (x >> b) built from
zero-filling logical shifts.  Both are linear over GF(2), which is what
makes the bijectivity, kernel, and dispersion analysis below exact.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from drtbench.core.gf2 import Gf2Matrix
from drtbench.core.types import (
    Drt,
    MapDescriptor,
    Rot,
    ShiftPair,
    WordSpec,
    as_descriptor,
)
from drtbench.errors import ParameterError, SizeLimitError


def rot_left(x: int, c: int, spec: WordSpec) -> int:
    """Left-rotate an n-bit word by c positions (0 <= c < n)."""
    n = spec.n
    if not 0 <= c < n:
        raise ParameterError(f"rotation amount must satisfy 0 <= c < {n}, got {c}")
    spec.check_word(x)
    return ((x << c) | (x >> (n - c))) & spec.mask if c else x


def rot_right(x: int, c: int, spec: WordSpec) -> int:
    """Right-rotate an n-bit word by c positions (0 <= c < n)."""
    n = spec.n
    if not 0 <= c < n:
        raise ParameterError(f"rotation amount must satisfy 0 <= c < {n}, got {c}")
    spec.check_word(x)
    return ((x >> c) | (x << (n - c))) & spec.mask if c else x


def drt(x: int, p: ShiftPair, spec: WordSpec) -> int:
    """Apply y = (x << a) ^ (x >> b) with logical (zero-filling) shifts.

    Bitwise, y_i = x_{i-a} XOR x_{i+b} with out-of-range terms absent.
    For a checked pair the map is a bijection on n-bit words.
    """
    if p.checked:
        p.validate_for(spec)
    spec.check_word(x)
    return ((x << p.a) ^ (x >> p.b)) & spec.mask


def apply_map(op: MapDescriptor, x: int, spec: WordSpec) -> int:
    """Evaluate any descriptor directly (rotation or two-shift map)."""
    d = as_descriptor(op)
    if isinstance(d, Rot):
        return rot_left(x, d.c, spec)
    spec.check_word(x)
    return ((x << d.a) ^ (x >> d.b)) & spec.mask


def build_gf2_matrix(op: MapDescriptor, spec: WordSpec) -> Gf2Matrix:
    """Matrix M with M[i][j] = 1 iff output bit i depends on input bit j."""
    d = as_descriptor(op)
    n = spec.n
    if isinstance(d, Rot):
        d.validate_for(spec)
        rows = [1 << ((i - d.c) % n) for i in range(n)]
    else:
        rows = []
        for i in range(n):
            row = 0
            if 0 <= i - d.a:
                row ^= 1 << (i - d.a)
            if i + d.b < n:
                row ^= 1 << (i + d.b)
            rows.append(row)
    return Gf2Matrix(n, rows)


class BijectivityReport(NamedTuple):
    bijective: bool
    rank: int


def is_bijective(op: MapDescriptor, spec: WordSpec) -> BijectivityReport:
    """Full-rank test of the map's GF(2) matrix."""
    rank = build_gf2_matrix(op, spec).rank()
    return BijectivityReport(rank == spec.n, rank)


def kernel_basis(op: MapDescriptor, spec: WordSpec) -> list[int]:
    """Basis of the kernel {x : map(x) = 0}; empty iff bijective."""
    return build_gf2_matrix(op, spec).kernel_basis()


@functools.lru_cache(maxsize=256)
def _inverse_matrix(a: int, b: int, m: int) -> Gf2Matrix:
    spec = WordSpec(m)
    return build_gf2_matrix(Drt(a, b), spec).inverse()


def drt_inverse(y: int, p: ShiftPair, spec: WordSpec) -> int:
    """Invert the two-shift map: the unique x with drt(x, p, spec) = y.

    The inverse matrix is computed once per (pair, width) and applied via
    column masks.  Raises NotInvertibleError for a singular (necessarily
    unchecked) pair.
    """
    if p.checked:
        p.validate_for(spec)
    spec.check_word(y)
    return _inverse_matrix(p.a, p.b, spec.m).apply(y)


@dataclass(frozen=True)
class Block:
    """One block of the concatenation layout.

    ``source`` is the inclusive (lo, hi) input-bit range feeding the block,
    or None for an all-zero block.
    """

    width: int
    source: Optional[tuple[int, int]]

    @property
    def is_zero(self) -> bool:
        return self.source is None


@dataclass(frozen=True)
class BlockDecomposition:
    """Block layout of the two shifted operands, low block first.

    blocks_left[j] describes block j of x << a and blocks_right[j] block j
    of x >> b; XORing the two reassembled words gives the map output.
    Even-position blocks are a bits wide, odd-position blocks b bits wide.
    """

    pair: ShiftPair
    spec: WordSpec
    blocks_left: tuple[Block, ...]
    blocks_right: tuple[Block, ...]

    def _assemble(self, blocks: tuple[Block, ...], x: int) -> int:
        word = 0
        offset = 0
        for blk in blocks:
            if blk.source is not None:
                lo, hi = blk.source
                piece = (x >> lo) & ((1 << blk.width) - 1)
                word |= piece << offset
            offset += blk.width
        return word

    def reconstruct(self, x: int) -> int:
        """Rebuild the map output from the block layout (equivalence oracle)."""
        return self._assemble(self.blocks_left, x) ^ self._assemble(
            self.blocks_right, x
        )


def block_decompose(p: ShiftPair, spec: WordSpec) -> BlockDecomposition:
    """Split both shifted operands into the alternating a/b-bit blocks.

    With s = a + b = 2**k, the left side is (zeros of width a), then blocks
    of widths b, a, b, a, ... read from input bit 0 upward; the right side
    reads the same widths starting at input bit s - a = b and ends in a
    zero block of width b.  Block j of the left side equals block j - 2 of
    the right side, which is what the analysis of the map's injectivity
    rests on.
    """
    p.validate_for(spec)
    n, a, b = spec.n, p.a, p.b
    count = 2 * n // (a + b)  # = 2^(m-k+1)

    def build(start_bit: int, first_zero: bool) -> tuple[Block, ...]:
        blocks = []
        pos = start_bit
        for j in range(count):
            width = a if j % 2 == 0 else b
            if (j == 0 and first_zero) or (j == count - 1 and not first_zero):
                blocks.append(Block(width, None))
            else:
                blocks.append(Block(width, (pos, pos + width - 1)))
                pos += width
        return tuple(blocks)

    left = build(0, first_zero=True)
    right = build(b, first_zero=False)
    return BlockDecomposition(p, spec, left, right)


@dataclass(frozen=True)
class DispersionProfile:
    """Counting view of how a linear map spreads input bits.

    dependency_count: total ones in the GF(2) matrix.
    avalanche[j]: output bits flipped by toggling input bit j alone
    (the weight of matrix column j).
    preserved_pair_count: adjacent input pairs (j, j+1) whose images are
    single output bits that stay adjacent in the same order.
    """

    dependency_count: int
    preserved_pair_count: int
    avalanche: tuple[int, ...]


def dispersion_profile(op: MapDescriptor, spec: WordSpec) -> DispersionProfile:
    matrix = build_gf2_matrix(op, spec)
    weights = matrix.column_weights()
    masks = matrix.column_masks()
    preserved = 0
    for j in range(spec.n - 1):
        if weights[j] == 1 and weights[j + 1] == 1:
            if masks[j + 1] == masks[j] << 1:
                preserved += 1
    return DispersionProfile(
        dependency_count=matrix.ones_count(),
        preserved_pair_count=preserved,
        avalanche=weights,
    )


def graph_points(op: MapDescriptor, spec: WordSpec) -> list[tuple[int, int]]:
    """All (x, map(x)) pairs in ascending x order; exhaustive, so n <= 16."""
    if spec.n > 16:
        raise SizeLimitError(
            f"graph enumeration is limited to n <= 16 bits, got n = {spec.n}"
        )
    d = as_descriptor(op)
    if isinstance(d, Rot):
        d.validate_for(spec)
    return [(x, apply_map(d, x, spec)) for x in range(1 << spec.n)]
