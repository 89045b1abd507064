"""Known-answer vectors and the cipher self-test.

The standard-variant vectors come from the ciphers' published references:
Rabbit's RFC appendix lists keystream blocks as 128-bit values both with
and without iv setup, Salsa20's verified submission vectors cover the
16-byte-key expansion, and the HC-128 zero vector is the designer's
published keystream.  The two-shift-variant expectations are golden files
produced once by an independent per-word reimplementation and committed
under data/goldens/.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field

from drtbench.ciphers.api import KeyIv, keystream
from drtbench.ciphers.streams import RabbitStream
from drtbench.ciphers.variants import drt_variant, standard_variant

# (key, iv, offset, expected bytes)
HC128_VECTORS = [
    # designer's test vector, zero key and iv (words 73150082 3bfd03a0 ...)
    (
        bytes(16),
        bytes(16),
        0,
        bytes.fromhex(
            "82001573a003fd3b7fd72ffb0eaf63aac62f12deb629dca72785a66268ec758b"
            "1edb36900560898178e0ad009abf1f491330dc1c246e3d6cb264f6900271d59c"
        ),
    ),
]

SALSA20_VECTORS = [
    # 128-bit-key verified vector set 1 #0: stream[0..63] and stream[192..255]
    (
        bytes([0x80]) + bytes(15),
        bytes(8),
        0,
        bytes.fromhex(
            "4dfa5e481da23ea09a31022050859936da52fcee218005164f267cb65f5cfd7f"
            "2b4f97e0ff16924a52df269515110a07f9e460bc65ef95da58f740b7d1dbb0aa"
        ),
    ),
    (
        bytes([0x80]) + bytes(15),
        bytes(8),
        192,
        bytes.fromhex(
            "da9c1581f429e0a00f7d67e23b730676783b262e8eb43a25f55fb90b3e753aef"
            "8c6713ec66c51881111593ccb3e8cb8f8de124080501eeeb389c4bcb6977cf95"
        ),
    ),
]

# (key as 128-bit int, iv as 64-bit int or None, three 128-bit blocks)
RABBIT_VECTORS = [
    (0, None, (0xB15754F036A5D6ECF56B45261C4AF702,
               0x88E8D815C59C0C397B696C4789C68AA7,
               0xF416A1C3700CD451DA68D1881673D696)),
    (0x912813292E3D36FE3BFC62F1DC51C3AC, None,
     (0x3D2DF3C83EF627A1E97FC38487E2519C,
      0xF576CD61F4405B8896BF53AA8554FC19,
      0xE5547473FBDB43508AE53B20204D4C5E)),
    (0x8395741587E0C733E9E9AB01C09B0043, None,
     (0x0CB10DCDA041CDAC32EB5CFD02D0609B,
      0x95FC9FCA0F17015A7B7092114CFF3EAD,
      0x9649E5DE8BFC7F3F924147AD3A947428)),
    (0, 0, (0xC6A7275EF85495D87CCD5D376705B7ED,
            0x5F29A6AC04F5EFD47B8F293270DC4A8D,
            0x2ADE822B29DE6C1EE52BDB8A47BF8F66)),
    (0, 0xC373F575C1267E59, (0x1FCD4EB9580012E2E0DCCC9222017D6D,
                             0xA75F4E10D12125017B2499FFED936F2E,
                             0xEBC112C393E738392356BDD012029BA7)),
    (0, 0xA6EB561AD2F41727, (0x445AD8C805858DBF70B6AF23A151104D,
                             0x96C8F27947F42C5BAEAE67C6ACC35B03,
                             0x9FCBFC895FA71C17313DF034F01551CB)),
]

GOLDEN_KEY = bytes(range(16))
GOLDEN_IV16 = bytes(range(16, 32))
GOLDEN_BYTES = 16384


def golden_bytes(cipher: str, tag: str) -> bytes:
    resource = importlib.resources.files("drtbench").joinpath(
        f"data/goldens/{cipher}_{tag}.bin"
    )
    return resource.read_bytes()


def first_difference(a: bytes, b: bytes) -> int | None:
    if a == b:
        return None
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return min(len(a), len(b))


@dataclass
class VectorResult:
    name: str
    passed: bool
    first_diff: int | None = None

    def describe(self) -> str:
        if self.passed:
            return f"{self.name}: ok"
        return f"{self.name}: MISMATCH at byte {self.first_diff}"


@dataclass
class SelfTestReport:
    cipher: str
    results: list[VectorResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def describe(self) -> str:
        lines = [r.describe() for r in self.results]
        verdict = "PASS" if self.passed else "FAIL"
        return "\n".join(lines + [f"{self.cipher}: {verdict}"])


def _check(report, name, got, expected):
    diff = first_difference(got, expected)
    report.results.append(VectorResult(name, diff is None, diff))


def self_test(cipher: str) -> SelfTestReport:
    """Run the known-answer and golden-file suites for one cipher."""
    report = SelfTestReport(cipher)
    std = standard_variant(cipher)

    if cipher == "hc128":
        for i, (key, iv, off, expected) in enumerate(HC128_VECTORS):
            got = keystream(std, KeyIv(key, iv), off + len(expected))[off:]
            _check(report, f"hc128 reference vector {i}", got, expected)
    elif cipher == "salsa20":
        for i, (key, iv, off, expected) in enumerate(SALSA20_VECTORS):
            got = keystream(std, KeyIv(key, iv), off + len(expected))[off:]
            _check(report, f"salsa20 reference vector {i}", got, expected)
    elif cipher == "rabbit":
        for i, (key_int, iv_int, blocks) in enumerate(RABBIT_VECTORS):
            key = key_int.to_bytes(16, "little")
            iv = None if iv_int is None else iv_int.to_bytes(8, "little")
            stream = RabbitStream(key, iv, std)
            got = stream.read(48)
            expected = b"".join(b.to_bytes(16, "little") for b in blocks)
            mode = "no-iv" if iv_int is None else "iv"
            _check(report, f"rabbit reference vector {i} ({mode})", got, expected)

    iv = GOLDEN_IV16 if cipher == "hc128" else GOLDEN_IV16[:8]
    for tag, variant in (("rot", std), ("drt", drt_variant(cipher))):
        expected = golden_bytes(cipher, tag)
        got = keystream(variant, KeyIv(GOLDEN_KEY, iv), len(expected))
        _check(report, f"{cipher} {tag} golden file", got, expected)

    return report
