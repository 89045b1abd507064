"""Compiled inner loops for the sequential keystream generators.

HC-128 and Rabbit evolve a single state sequentially, so their word loops
are JIT-compiled.  All 32-bit words live in uint64 slots with explicit
masking; indices and counters stay int64 (mixing the two in arithmetic
would silently promote to float under numba's typing rules).  A mixing
site is a (kind, p, q) triple selecting left rotation, right rotation, or
the two-shift map.
"""

import numpy as np
from numba import njit, uint64

M32 = np.uint64(0xFFFFFFFF)
C32 = np.uint64(32)
U16 = np.uint64(16)
U255 = np.uint64(255)

KIND_ROTL = np.uint64(0)
KIND_ROTR = np.uint64(1)


@njit(inline="always")
def _mix(x, kind, p, q):
    if kind == KIND_ROTL:
        return ((x << p) | (x >> (C32 - p))) & M32
    if kind == KIND_ROTR:
        return ((x >> p) | (x << (C32 - p))) & M32
    return ((x << p) ^ (x >> q)) & M32


# ---------------------------------------------------------------- HC-128

@njit(inline="always")
def _hc_word(T, O, j, kx, px, qx, kz, pz, qz, ky, py, qy):
    """One keystream step at in-phase position j; returns the output word."""
    x = T[(j - 3) & 511]
    y = T[(j - 10) & 511]
    z = T[(j + 1) & 511]  # j - 511 mod 512
    g = ((_mix(x, kx, px, qx) ^ _mix(z, kz, pz, qz)) + _mix(y, ky, py, qy)) & M32
    v = (T[j] + g) & M32
    T[j] = v
    u = T[(j - 12) & 511]
    h = (O[u & U255] + O[256 + ((u >> U16) & U255)]) & M32
    return h ^ v


@njit(cache=True)
def _hc_run(T, O, j, run, out, idx, kx, px, qx, kz, pz, qz, ky, py, qy):
    for _ in range(run):
        out[idx] = _hc_word(T, O, j, kx, px, qx, kz, pz, qz, ky, py, qy)
        j += 1
        idx += 1


@njit(cache=True)
def _hc_init_pass(T, O, kx, px, qx, kz, pz, qz, ky, py, qy):
    """One 512-step initialization pass: fold the feedback value into T."""
    for j in range(512):
        x = T[(j - 3) & 511]
        y = T[(j - 10) & 511]
        z = T[(j + 1) & 511]
        g = ((_mix(x, kx, px, qx) ^ _mix(z, kz, pz, qz)) + _mix(y, ky, py, qy)) & M32
        u = T[(j - 12) & 511]
        h = (O[u & U255] + O[256 + ((u >> U16) & U255)]) & M32
        T[j] = ((T[j] + g) & M32) ^ h


@njit(cache=True)
def hc128_setup(kw, kinds, ps, qs):
    """Expand key/iv words into the P and Q tables and run the 1024 mixing steps.

    kw holds the four key words followed by the four iv words.
    """
    W = np.zeros(1280, dtype=np.uint64)
    for i in range(4):
        W[i] = kw[i]
        W[i + 4] = kw[i]
        W[i + 8] = kw[4 + i]
        W[i + 12] = kw[4 + i]
    k0, p0, q0 = kinds[0], ps[0], qs[0]
    k1, p1, q1 = kinds[1], ps[1], qs[1]
    k2, p2, q2 = kinds[2], ps[2], qs[2]
    k3, p3, q3 = kinds[3], ps[3], qs[3]
    for i in range(16, 1280):
        w2 = W[i - 2]
        w15 = W[i - 15]
        f2 = _mix(w2, k2, p2, q2) ^ _mix(w2, k3, p3, q3) ^ (w2 >> np.uint64(10))
        f1 = _mix(w15, k0, p0, q0) ^ _mix(w15, k1, p1, q1) ^ (w15 >> np.uint64(3))
        W[i] = (f1 + f2 + W[i - 7] + W[i - 16] + uint64(i)) & M32
    P = W[256:768].copy()
    Q = W[768:1280].copy()
    _hc_init_pass(P, Q, kinds[4], ps[4], qs[4], kinds[5], ps[5], qs[5],
                  kinds[6], ps[6], qs[6])
    _hc_init_pass(Q, P, kinds[7], ps[7], qs[7], kinds[8], ps[8], qs[8],
                  kinds[9], ps[9], qs[9])
    return P, Q


@njit(cache=True)
def hc128_generate(P, Q, ctr, out, kinds, ps, qs):
    """Fill out with keystream words starting at step ctr; returns the new ctr."""
    n = out.shape[0]
    idx = 0
    while idx < n:
        j = ctr & 511
        run = 512 - j
        if run > n - idx:
            run = n - idx
        if (ctr & 1023) < 512:
            _hc_run(P, Q, j, run, out, idx, kinds[4], ps[4], qs[4],
                    kinds[5], ps[5], qs[5], kinds[6], ps[6], qs[6])
        else:
            _hc_run(Q, P, j, run, out, idx, kinds[7], ps[7], qs[7],
                    kinds[8], ps[8], qs[8], kinds[9], ps[9], qs[9])
        ctr += run
        idx += run
    return ctr


# ---------------------------------------------------------------- Rabbit

RABBIT_A = np.array(
    [0x4D34D34D, 0xD34D34D3, 0x34D34D34, 0x4D34D34D,
     0xD34D34D3, 0x34D34D34, 0x4D34D34D, 0xD34D34D3],
    dtype=np.uint64,
)


@njit(inline="always")
def _rabbit_next(s, g, k0, p0, q0, k1, p1, q1, k2, p2, q2):
    carry = s[16]
    for j in range(8):
        t = s[8 + j] + RABBIT_A[j] + carry
        carry = t >> C32
        s[8 + j] = t & M32
    s[16] = carry
    for j in range(8):
        u = (s[j] + s[8 + j]) & M32
        sq = u * u
        g[j] = (sq ^ (sq >> C32)) & M32
    s[0] = (g[0] + _mix(g[7], k0, p0, q0) + _mix(g[6], k1, p1, q1)) & M32
    s[1] = (g[1] + _mix(g[0], k2, p2, q2) + g[7]) & M32
    s[2] = (g[2] + _mix(g[1], k0, p0, q0) + _mix(g[0], k1, p1, q1)) & M32
    s[3] = (g[3] + _mix(g[2], k2, p2, q2) + g[1]) & M32
    s[4] = (g[4] + _mix(g[3], k0, p0, q0) + _mix(g[2], k1, p1, q1)) & M32
    s[5] = (g[5] + _mix(g[4], k2, p2, q2) + g[3]) & M32
    s[6] = (g[6] + _mix(g[5], k0, p0, q0) + _mix(g[4], k1, p1, q1)) & M32
    s[7] = (g[7] + _mix(g[6], k2, p2, q2) + g[5]) & M32


@njit(cache=True)
def rabbit_iterate(s, g, steps, kinds, ps, qs):
    """Advance the state without producing output (key/iv setup)."""
    for _ in range(steps):
        _rabbit_next(s, g, kinds[0], ps[0], qs[0], kinds[1], ps[1], qs[1],
                     kinds[2], ps[2], qs[2])


@njit(cache=True)
def rabbit_generate(s, g, out, kinds, ps, qs):
    """Fill out (length divisible by 4) with extracted keystream words."""
    k0, p0, q0 = kinds[0], ps[0], qs[0]
    k1, p1, q1 = kinds[1], ps[1], qs[1]
    k2, p2, q2 = kinds[2], ps[2], qs[2]
    nblocks = out.shape[0] // 4
    for b in range(nblocks):
        _rabbit_next(s, g, k0, p0, q0, k1, p1, q1, k2, p2, q2)
        o = 4 * b
        out[o] = (s[0] ^ (s[5] >> U16) ^ (s[3] << U16)) & M32
        out[o + 1] = (s[2] ^ (s[7] >> U16) ^ (s[5] << U16)) & M32
        out[o + 2] = (s[4] ^ (s[1] >> U16) ^ (s[7] << U16)) & M32
        out[o + 3] = (s[6] ^ (s[3] >> U16) ^ (s[1] << U16)) & M32
