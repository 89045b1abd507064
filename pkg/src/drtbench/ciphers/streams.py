"""Keystream generator objects for the three ciphers.

Each stream owns its evolving state, produces bytes on demand through
``read``, and is deterministic in (key, iv, variant): the byte sequence is
independent of how reads are chunked.  Words are serialized little-endian.
"""

from __future__ import annotations

import numpy as np

from drtbench.ciphers import kernels
from drtbench.ciphers.variants import (
    KIND_DRT,
    KIND_ROTL,
    CipherVariant,
    SITE_TABLES,
    mirror_strategy,
    resolve_site,
    resolve_sites,
)
from drtbench.errors import ParameterError

KEY_BYTES = 16
IV_BYTES = {"hc128": 16, "rabbit": 8, "salsa20": 8}


def _site_arrays(triples):
    kinds = np.array([t[0] for t in triples], dtype=np.uint64)
    ps = np.array([t[1] for t in triples], dtype=np.uint64)
    qs = np.array([t[2] for t in triples], dtype=np.uint64)
    return kinds, ps, qs


def _scalar_mix(x: int, triple) -> int:
    kind, p, q = triple
    if kind == KIND_ROTL:
        return ((x << p) | (x >> (32 - p))) & 0xFFFFFFFF if p else x
    if kind == KIND_DRT:
        return ((x << p) ^ (x >> q)) & 0xFFFFFFFF
    return ((x >> p) | (x << (32 - p))) & 0xFFFFFFFF if p else x


class _BufferedStream:
    """read() facade over block-granular production."""

    def __init__(self):
        self._pending = bytearray()

    def _produce(self, nbytes: int) -> bytes:
        raise NotImplementedError

    def read(self, nbytes: int) -> bytes:
        if nbytes < 1:
            raise ParameterError("keystream length must be >= 1 byte")
        while len(self._pending) < nbytes:
            self._pending += self._produce(nbytes - len(self._pending))
        out = bytes(self._pending[:nbytes])
        del self._pending[:nbytes]
        return out


def _check_key_iv(cipher: str, key: bytes, iv: bytes | None, iv_ok_none=False):
    if len(key) != KEY_BYTES:
        raise ParameterError(f"{cipher} key must be {KEY_BYTES} bytes, got {len(key)}")
    if iv is None:
        if not iv_ok_none:
            raise ParameterError(f"{cipher} requires an iv")
        return
    if len(iv) != IV_BYTES[cipher]:
        raise ParameterError(
            f"{cipher} iv must be {IV_BYTES[cipher]} bytes, got {len(iv)}"
        )


class Hc128Stream(_BufferedStream):
    """HC-128 with parameterized f1/f2/g1 sites; g2 mirrors g1's strategies."""

    MAX_WORDS = 1 << 18  # 1 MiB of output per kernel call

    def __init__(self, key: bytes, iv: bytes, variant: CipherVariant):
        super().__init__()
        _check_key_iv("hc128", key, iv)
        directions = [d for _, d, _ in SITE_TABLES["hc128"]]
        triples = resolve_sites(variant.sites, directions)
        g2 = [mirror_strategy(s) for s in variant.sites[4:7]]
        triples += resolve_sites(g2, ["left", "left", "left"])
        self._kinds, self._ps, self._qs = _site_arrays(triples)
        kw = np.frombuffer(key + iv, dtype="<u4").astype(np.uint64)
        self._P, self._Q = kernels.hc128_setup(kw, self._kinds, self._ps, self._qs)
        self._ctr = 0

    def _produce(self, nbytes: int) -> bytes:
        nwords = min(self.MAX_WORDS, -(-nbytes // 4))
        buf = np.empty(nwords, dtype=np.uint64)
        self._ctr = kernels.hc128_generate(
            self._P, self._Q, self._ctr, buf, self._kinds, self._ps, self._qs
        )
        return buf.astype("<u4").tobytes()


class RabbitStream(_BufferedStream):
    """Rabbit with parameterized state-update and key-setup rotation sites.

    iv=None skips iv setup entirely (the reference specification's
    "without iv" test mode); the experiment harness always supplies one.
    """

    MAX_WORDS = 1 << 18

    def __init__(self, key: bytes, iv: bytes | None, variant: CipherVariant):
        super().__init__()
        _check_key_iv("rabbit", key, iv, iv_ok_none=True)
        directions = [d for _, d, _ in SITE_TABLES["rabbit"]]
        triples = resolve_sites(variant.sites, directions)
        self._kinds, self._ps, self._qs = _site_arrays(triples[:3])
        setup_site = triples[3]

        k = [int(w) for w in np.frombuffer(key, dtype="<u4")]
        x = [0] * 8
        c = [0] * 8
        for j in (0, 2, 4, 6):
            x[j] = k[j // 2]
        x[1] = ((k[3] << 16) | (k[2] >> 16)) & 0xFFFFFFFF
        x[3] = ((k[0] << 16) | (k[3] >> 16)) & 0xFFFFFFFF
        x[5] = ((k[1] << 16) | (k[0] >> 16)) & 0xFFFFFFFF
        x[7] = ((k[2] << 16) | (k[1] >> 16)) & 0xFFFFFFFF
        c[0] = _scalar_mix(k[2], setup_site)
        c[2] = _scalar_mix(k[3], setup_site)
        c[4] = _scalar_mix(k[0], setup_site)
        c[6] = _scalar_mix(k[1], setup_site)
        c[1] = (k[0] & 0xFFFF0000) | (k[1] & 0xFFFF)
        c[3] = (k[1] & 0xFFFF0000) | (k[2] & 0xFFFF)
        c[5] = (k[2] & 0xFFFF0000) | (k[3] & 0xFFFF)
        c[7] = (k[3] & 0xFFFF0000) | (k[0] & 0xFFFF)

        self._s = np.array(x + c + [0], dtype=np.uint64)
        self._g = np.empty(8, dtype=np.uint64)
        kernels.rabbit_iterate(self._s, self._g, 4, self._kinds, self._ps, self._qs)
        for j in range(8):
            self._s[8 + j] ^= self._s[(j + 4) % 8]

        if iv is not None:
            i0, i2 = (int(w) for w in np.frombuffer(iv, dtype="<u4"))
            i1 = (i0 >> 16) | (i2 & 0xFFFF0000)
            i3 = ((i2 << 16) | (i0 & 0xFFFF)) & 0xFFFFFFFF
            for j, ivw in enumerate((i0, i1, i2, i3, i0, i1, i2, i3)):
                self._s[8 + j] ^= np.uint64(ivw)
            kernels.rabbit_iterate(
                self._s, self._g, 4, self._kinds, self._ps, self._qs
            )

    def _produce(self, nbytes: int) -> bytes:
        nblocks = min(self.MAX_WORDS // 4, -(-nbytes // 16))
        buf = np.empty(nblocks * 4, dtype=np.uint64)
        kernels.rabbit_generate(
            self._s, self._g, buf, self._kinds, self._ps, self._qs
        )
        return buf.astype("<u4").tobytes()


def _lane_mix(triple):
    """Vectorized site mix: f(t, out, tmp) leaves the mixed word in out."""
    kind, p, q = triple
    if kind == KIND_DRT:
        def mix(t, out, tmp):
            np.left_shift(t, p, out=out)
            np.right_shift(t, q, out=tmp)
            np.bitwise_xor(out, tmp, out=out)
        return mix
    c = p if kind == KIND_ROTL else (32 - p) % 32
    if c == 0:
        def mix(t, out, tmp):
            np.copyto(out, t)
        return mix

    def mix(t, out, tmp):
        np.left_shift(t, c, out=out)
        np.right_shift(t, 32 - c, out=tmp)
        np.bitwise_or(out, tmp, out=out)
    return mix


# quarter-round index groups of one double round, column pass then row pass
_QR_INDICES = (
    (0, 4, 8, 12), (5, 9, 13, 1), (10, 14, 2, 6), (15, 3, 7, 11),
    (0, 1, 2, 3), (5, 6, 7, 4), (10, 11, 8, 9), (15, 12, 13, 14),
)

_TAU = np.frombuffer(b"expand 16-byte k", dtype="<u4")


class Salsa20Stream(_BufferedStream):
    """Salsa20/20 with a 16-byte key and parameterized quarter-round sites.

    Output blocks are independent in the counter, so lanes of blocks are
    produced in parallel with array arithmetic.
    """

    LANES = 16384  # 1 MiB of output per batch

    def __init__(self, key: bytes, iv: bytes, variant: CipherVariant):
        super().__init__()
        _check_key_iv("salsa20", key, iv)
        directions = [d for _, d, _ in SITE_TABLES["salsa20"]]
        self._mixes = [
            _lane_mix(t) for t in resolve_sites(variant.sites, directions)
        ]
        kw = np.frombuffer(key, dtype="<u4")
        ivw = np.frombuffer(iv, dtype="<u4")
        template = np.zeros(16, dtype=np.uint32)
        template[0] = _TAU[0]
        template[1:5] = kw
        template[5] = _TAU[1]
        template[6:8] = ivw
        template[10] = _TAU[2]
        template[11:15] = kw
        template[15] = _TAU[3]
        self._template = template
        self._block = 0

    def _quarter(self, z, a, b, c, d, t, u, v):
        m1, m2, m3, m4 = self._mixes
        np.add(z[a], z[d], out=t)
        m1(t, u, v)
        np.bitwise_xor(z[b], u, out=z[b])
        np.add(z[b], z[a], out=t)
        m2(t, u, v)
        np.bitwise_xor(z[c], u, out=z[c])
        np.add(z[c], z[b], out=t)
        m3(t, u, v)
        np.bitwise_xor(z[d], u, out=z[d])
        np.add(z[d], z[c], out=t)
        m4(t, u, v)
        np.bitwise_xor(z[a], u, out=z[a])

    def _produce(self, nbytes: int) -> bytes:
        nblocks = min(self.LANES, -(-nbytes // 64))
        counters = np.arange(self._block, self._block + nblocks, dtype=np.uint64)
        self._block += nblocks
        x = np.repeat(self._template[:, None], nblocks, axis=1)
        x[8] = (counters & np.uint64(0xFFFFFFFF)).astype(np.uint32)
        x[9] = (counters >> np.uint64(32)).astype(np.uint32)
        z = x.copy()
        t = np.empty(nblocks, dtype=np.uint32)
        u = np.empty(nblocks, dtype=np.uint32)
        v = np.empty(nblocks, dtype=np.uint32)
        for _ in range(10):
            for a, b, c, d in _QR_INDICES:
                self._quarter(z, a, b, c, d, t, u, v)
        z += x
        return z.T.astype("<u4").tobytes()


STREAM_CLASSES = {
    "hc128": Hc128Stream,
    "rabbit": RabbitStream,
    "salsa20": Salsa20Stream,
}
