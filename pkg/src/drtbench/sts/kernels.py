"""Compiled helpers for the statistical tests with sequential inner loops."""

import numpy as np
from numba import njit


@njit(cache=True)
def berlekamp_massey_batch(packed, m):
    """Linear complexity of each block given as packed uint64 words.

    packed has one row per block; bit i of the row (little bit order across
    words) is the block's bit i.  Row width must leave headroom of at least
    one bit beyond m (m + 1 <= 64 * words).  The feedback polynomial, the
    shifted copy of the previous polynomial, and the reversed input window
    are all kept packed, so the discrepancy is an XOR-fold plus parity.
    """
    nblocks, words = packed.shape
    out = np.empty(nblocks, dtype=np.int64)
    c = np.empty(words, dtype=np.uint64)
    bs = np.empty(words, dtype=np.uint64)
    t = np.empty(words, dtype=np.uint64)
    r = np.empty(words, dtype=np.uint64)
    one = np.uint64(1)
    u63 = np.uint64(63)
    for bi in range(nblocks):
        row = packed[bi]
        for w in range(words):
            c[w] = 0
            bs[w] = 0
            r[w] = 0
        c[0] = one
        bs[0] = one
        L = 0
        for n in range(m):
            # slide the reversed window and the shifted previous polynomial
            for w in range(words - 1, 0, -1):
                r[w] = (r[w] << one) | (r[w - 1] >> u63)
                bs[w] = (bs[w] << one) | (bs[w - 1] >> u63)
            r[0] = (r[0] << one) | ((row[n >> 6] >> np.uint64(n & 63)) & one)
            bs[0] = bs[0] << one
            acc = np.uint64(0)
            for w in range(words):
                acc ^= c[w] & r[w]
            acc ^= acc >> np.uint64(32)
            acc ^= acc >> np.uint64(16)
            acc ^= acc >> np.uint64(8)
            acc ^= acc >> np.uint64(4)
            acc ^= acc >> np.uint64(2)
            acc ^= acc >> one
            if acc & one:
                if 2 * L <= n:
                    for w in range(words):
                        t[w] = c[w]
                        c[w] ^= bs[w]
                        bs[w] = t[w]
                    L = n + 1 - L
                else:
                    for w in range(words):
                        c[w] ^= bs[w]
        out[bi] = L
    return out


@njit(cache=True)
def rank32_batch(rows_all):
    """GF(2) rank of each 32x32 matrix given as 32 row words (int64)."""
    count = rows_all.shape[0]
    out = np.empty(count, dtype=np.int64)
    rows = np.empty(32, dtype=np.int64)
    for m in range(count):
        for i in range(32):
            rows[i] = rows_all[m, i]
        rank = 0
        for col in range(32):
            bit = 1 << col
            piv = -1
            for r in range(rank, 32):
                if rows[r] & bit:
                    piv = r
                    break
            if piv >= 0:
                tmp = rows[rank]
                rows[rank] = rows[piv]
                rows[piv] = tmp
                prow = rows[rank]
                for r in range(rank + 1, 32):
                    if rows[r] & bit:
                        rows[r] ^= prow
                rank += 1
        out[m] = rank
    return out


@njit(cache=True)
def universal_sum(block_values, q, k, table_size):
    """Sum of log2 gaps between repeats of L-bit patterns.

    block_values holds the pattern of each block; the first q initialize
    the last-seen table, the next k contribute log2(i - last[pattern]).
    """
    table = np.zeros(table_size, dtype=np.int64)
    for i in range(q):
        table[block_values[i]] = i + 1
    total = 0.0
    for i in range(q, q + k):
        ix = i + 1
        total += np.log2(ix - table[block_values[i]])
        table[block_values[i]] = ix
    return total
