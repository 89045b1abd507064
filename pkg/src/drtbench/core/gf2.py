"""Dense linear algebra over GF(2) on bit-packed rows.

A matrix row is stored as a Python int whose bit j is entry [i][j]; applying
the matrix to a word computes y_i = parity(row_i & x).  Everything here is
exact integer arithmetic, so rank/kernel/inverse results are never
approximate.
"""

from __future__ import annotations

import numpy as np

from drtbench.errors import NotInvertibleError


class Gf2Matrix:
    """Square 0/1 matrix acting on n-bit words (bit 0 = least significant)."""

    __slots__ = ("n", "rows", "_colmasks")

    def __init__(self, n: int, rows):
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        self.n = n
        self.rows = rows
        self._colmasks = None

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, [1 << i for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, Gf2Matrix)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def to_array(self) -> np.ndarray:
        """Dense uint8 array with arr[i, j] = entry [i][j]."""
        arr = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, row in enumerate(self.rows):
            for j in range(self.n):
                arr[i, j] = (row >> j) & 1
        return arr

    def ones_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def column_weights(self) -> tuple[int, ...]:
        weights = [0] * self.n
        for row in self.rows:
            while row:
                j = row & -row
                weights[j.bit_length() - 1] += 1
                row ^= j
        return tuple(weights)

    def column_masks(self) -> tuple[int, ...]:
        """masks[j] has bit i set iff entry [i][j] = 1 (cached)."""
        if self._colmasks is None:
            masks = [0] * self.n
            for i, row in enumerate(self.rows):
                r = row
                while r:
                    j = r & -r
                    masks[j.bit_length() - 1] |= 1 << i
                    r ^= j
            self._colmasks = tuple(masks)
        return self._colmasks

    def apply(self, x: int) -> int:
        """Matrix-vector product over GF(2): XOR of columns selected by x."""
        masks = self.column_masks()
        y = 0
        while x:
            j = x & -x
            y ^= masks[j.bit_length() - 1]
            x ^= j
        return y

    def apply_batch(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized apply for an array of words (n <= 64)."""
        masks = np.array(self.column_masks(), dtype=np.uint64)
        xs = xs.astype(np.uint64)
        out = np.zeros_like(xs)
        for j in range(self.n):
            sel = ((xs >> np.uint64(j)) & np.uint64(1)).astype(bool)
            out[sel] ^= masks[j]
        return out

    def _echelon(self):
        """Row echelon form; returns (reduced rows, pivot column per row)."""
        ech: list[int] = []
        piv: list[int] = []
        for row in self.rows:
            cur = row
            while cur:
                lead = cur.bit_length() - 1
                hit = None
                for idx, p in enumerate(piv):
                    if p == lead:
                        hit = idx
                        break
                if hit is None:
                    ech.append(cur)
                    piv.append(lead)
                    break
                cur ^= ech[hit]
        return ech, piv

    def rank(self) -> int:
        return len(self._echelon()[0])

    def kernel_basis(self) -> list[int]:
        """Basis of {x : Mx = 0}; empty iff the matrix is nonsingular."""
        ech, piv = self._echelon()
        # back-substitute to reduced echelon so each pivot column is unique
        order = sorted(range(len(ech)), key=lambda i: -piv[i])
        rows = [ech[i] for i in order]
        pivots = [piv[i] for i in order]
        for i in range(len(rows)):
            for j in range(i):
                if (rows[j] >> pivots[i]) & 1:
                    rows[j] ^= rows[i]
        pivot_set = set(pivots)
        basis = []
        for free in range(self.n):
            if free in pivot_set:
                continue
            vec = 1 << free
            for row, p in zip(rows, pivots):
                if (row >> free) & 1:
                    vec |= 1 << p
            basis.append(vec)
        return basis

    def inverse(self) -> "Gf2Matrix":
        """Gauss-Jordan inverse; raises NotInvertibleError when singular."""
        n = self.n
        rows = list(self.rows)
        aug = [1 << i for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if (rows[r] >> col) & 1:
                    piv = r
                    break
            if piv is None:
                raise NotInvertibleError(f"matrix is singular (rank < {n})")
            rows[col], rows[piv] = rows[piv], rows[col]
            aug[col], aug[piv] = aug[piv], aug[col]
            for r in range(n):
                if r != col and (rows[r] >> col) & 1:
                    rows[r] ^= rows[col]
                    aug[r] ^= aug[col]
        return Gf2Matrix(n, aug)
