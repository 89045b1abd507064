"""The fifteen randomness tests, each mapping a bit sequence to sub-item p-values.

Every test follows the reference statistical suite's algorithm and default
parameterization; block sizes and template lengths are configurable through
SuiteConfig.  A sub-item whose precondition fails (too few cycles in the
excursion tests, sequence below a test's recommended minimum) carries
p_value=None plus a note, which the classification layer treats as neither
pass nor fault.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from drtbench.errors import ParameterError
from drtbench.sts import kernels
from drtbench.sts.special import erfc, igamc, normal_cdf

LN2 = math.log(2.0)


@dataclass(frozen=True)
class SuiteConfig:
    """Suite-level and per-test parameters (reference-suite defaults)."""

    sequence_bits: int = 1_000_000
    sequence_cap: Optional[int] = None
    alpha: float = 0.01
    block_frequency_m: int = 128
    not_template_m: int = 9
    ot_template_m: int = 9
    serial_m: int = 16
    apen_m: int = 10
    lc_block: int = 500
    universal_l: Optional[int] = None  # None: choose from sequence length

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError("alpha must lie strictly between 0 and 1")
        if self.sequence_bits < 100:
            raise ParameterError("sequences shorter than 100 bits are untestable")
        for name in ("block_frequency_m", "not_template_m", "ot_template_m",
                     "serial_m", "apen_m", "lc_block"):
            if getattr(self, name) < 2:
                raise ParameterError(f"{name} must be >= 2")

    def with_overrides(self, **kwargs) -> "SuiteConfig":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class SubItemResult:
    label: str
    p_value: Optional[float]
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.p_value is not None


@dataclass(frozen=True)
class TestResult:
    test_id: str
    sub_items: tuple[SubItemResult, ...]

    def p_values(self) -> list[Optional[float]]:
        return [s.p_value for s in self.sub_items]


def _single(test_id: str, p: float, note: str = "") -> list[SubItemResult]:
    return [SubItemResult(test_id, p, note)]


def _window_values(bits: np.ndarray, m: int, wrap: bool) -> np.ndarray:
    """Value of every m-bit window, first bit most significant.

    Shorter windows at the same start position are prefixes, so callers
    needing m-1 or m-2 as well can shift this result right instead of
    rescanning.
    """
    n = len(bits)
    if wrap:
        ext = np.concatenate([bits, bits[: m - 1]])
        count = n
    else:
        ext = bits
        count = n - m + 1
    vals = np.zeros(count, dtype=np.int32)
    for j in range(m):
        np.left_shift(vals, 1, out=vals)
        np.bitwise_or(vals, ext[j : j + count], out=vals)
    return vals


@functools.lru_cache(maxsize=8)
def aperiodic_templates(m: int) -> tuple[int, ...]:
    """All aperiodic (unbordered) m-bit templates in ascending value order."""
    found = []
    for v in range(1 << m):
        bits = [(v >> (m - 1 - j)) & 1 for j in range(m)]
        if all(bits[k:] != bits[: m - k] for k in range(1, m)):
            found.append(v)
    return tuple(found)


def template_label(value: int, m: int) -> str:
    return format(value, f"0{m}b")


# ------------------------------------------------------------ 1. Freq

def frequency_test(bits, cfg):
    n = len(bits)
    s = 2 * int(bits.sum()) - n
    p = erfc(abs(s) / math.sqrt(n) / math.sqrt(2.0))
    return _single("Freq", p)


# ------------------------------------------------------------ 2. BF

def block_frequency_test(bits, cfg):
    m = cfg.block_frequency_m
    n = len(bits)
    nblocks = n // m
    if nblocks < 1:
        return _single("BF", None, f"needs at least one block of {m} bits")
    props = bits[: nblocks * m].reshape(nblocks, m).mean(axis=1)
    chi2 = 4.0 * m * float(np.sum((props - 0.5) ** 2))
    return _single("BF", igamc(nblocks / 2.0, chi2 / 2.0))


# ------------------------------------------------------------ 3. Run

def runs_test(bits, cfg):
    n = len(bits)
    pi = float(bits.sum()) / n
    if abs(pi - 0.5) > 2.0 / math.sqrt(n):
        return _single("Run", 0.0, "frequency pretest failed")
    v = 1 + int(np.count_nonzero(np.diff(bits)))
    num = abs(v - 2.0 * n * pi * (1.0 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1.0 - pi)
    return _single("Run", erfc(num / den))


# ------------------------------------------------------------ 4. LR

_LR_TABLES = (
    # (min n, block size, lowest class, highest class, class probabilities)
    (750000, 10000, 10, 16,
     (0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727)),
    (6272, 128, 4, 9,
     (0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071,
      0.112398847)),
    (128, 8, 1, 4, (0.21484375, 0.3671875, 0.23046875, 0.1875)),
)


def longest_run_test(bits, cfg):
    n = len(bits)
    for min_n, m, lo, hi, pi in _LR_TABLES:
        if n >= min_n:
            break
    else:
        return _single("LR", None, "sequence shorter than 128 bits")
    nblocks = n // m
    rows = bits[: nblocks * m].reshape(nblocks, m)
    padded = np.zeros((nblocks, m + 2), dtype=np.int8)
    padded[:, 1 : m + 1] = rows
    flat = padded.ravel()
    change = np.diff(flat)
    starts = np.flatnonzero(change == 1)
    ends = np.flatnonzero(change == -1)
    longest = np.zeros(nblocks, dtype=np.int64)
    if len(starts):
        np.maximum.at(longest, starts // (m + 2), ends - starts)
    classes = np.clip(longest, lo, hi) - lo
    nu = np.bincount(classes, minlength=hi - lo + 1).astype(np.float64)
    expected = nblocks * np.asarray(pi)
    chi2 = float(np.sum((nu - expected) ** 2 / expected))
    k = hi - lo
    return _single("LR", igamc(k / 2.0, chi2 / 2.0))


# ------------------------------------------------------------ 5. Rank

@functools.lru_cache(maxsize=1)
def _rank_probabilities() -> tuple[float, float, float]:
    def prob(r, mq=32):
        exp = r * (2 * mq - r) - mq * mq
        prod = 1.0
        for i in range(r):
            prod *= (1.0 - 2.0 ** (i - mq)) ** 2 / (1.0 - 2.0 ** (i - r))
        return 2.0**exp * prod

    p32, p31 = prob(32), prob(31)
    return p32, p31, 1.0 - p32 - p31


def rank_test(bits, cfg):
    n = len(bits)
    nmat = n // 1024
    if nmat < 38:
        return _single("Rank", None, "needs at least 38 matrices (38912 bits)")
    mats = bits[: nmat * 1024].reshape(nmat, 32, 32).astype(np.int64)
    weights = 1 << np.arange(31, -1, -1, dtype=np.int64)
    rows = mats @ weights
    ranks = kernels.rank32_batch(rows)
    f32 = int(np.count_nonzero(ranks == 32))
    f31 = int(np.count_nonzero(ranks == 31))
    rest = nmat - f32 - f31
    p32, p31, p30 = _rank_probabilities()
    chi2 = ((f32 - nmat * p32) ** 2 / (nmat * p32)
            + (f31 - nmat * p31) ** 2 / (nmat * p31)
            + (rest - nmat * p30) ** 2 / (nmat * p30))
    return _single("Rank", math.exp(-chi2 / 2.0))


# ------------------------------------------------------------ 6. FFT

def spectral_test(bits, cfg):
    n = len(bits)
    x = 2.0 * bits.astype(np.float64) - 1.0
    mags = np.abs(np.fft.rfft(x)[: n // 2])
    threshold = math.sqrt(math.log(20.0) * n)
    n1 = int(np.count_nonzero(mags < threshold))
    n0 = 0.95 * n / 2.0
    d = (n1 - n0) / math.sqrt(n * 0.95 * 0.05 / 4.0)
    return _single("FFT", erfc(abs(d) / math.sqrt(2.0)))


# ------------------------------------------------------------ 7. NOT

def non_overlapping_template_test(bits, cfg):
    m = cfg.not_template_m
    n = len(bits)
    nblocks = 8
    mblock = n // nblocks
    if mblock < m + 1:
        return [SubItemResult("NOT", None, "blocks shorter than the template")]
    mean = (mblock - m + 1) / 2.0**m
    var = mblock * (1.0 / 2.0**m - (2.0 * m - 1.0) / 2.0 ** (2 * m))
    vals = _window_values(bits, m, wrap=False)
    # one bincount per block delivers the count of every template at once;
    # aperiodic templates cannot self-overlap, so the greedy scan count
    # equals the plain match count
    counts = np.zeros((nblocks, 1 << m), dtype=np.int64)
    for j in range(nblocks):
        region = vals[j * mblock : j * mblock + mblock - m + 1]
        counts[j] = np.bincount(region, minlength=1 << m)
    results = []
    for tval in aperiodic_templates(m):
        w = counts[:, tval].astype(np.float64)
        chi2 = float(np.sum((w - mean) ** 2 / var))
        results.append(
            SubItemResult(template_label(tval, m), igamc(nblocks / 2.0, chi2 / 2.0))
        )
    return results


# ------------------------------------------------------------ 8. OT

def _overlap_prob(u: int, eta: float) -> float:
    if u == 0:
        return math.exp(-eta)
    total = 0.0
    for el in range(1, u + 1):
        total += math.exp(
            -eta - u * LN2 + el * math.log(eta)
            - math.lgamma(el + 1) + math.lgamma(u)
            - math.lgamma(el) - math.lgamma(u - el + 1)
        )
    return total


def overlapping_template_test(bits, cfg):
    m = cfg.ot_template_m
    n = len(bits)
    mblock = 1032
    nblocks = n // mblock
    if nblocks < 1:
        return _single("OT", None, f"needs at least {mblock} bits")
    vals = _window_values(bits, m, wrap=False)
    target = (1 << m) - 1
    hits = np.zeros(nblocks, dtype=np.int64)
    matches = (vals == target)
    for j in range(nblocks):
        hits[j] = int(np.count_nonzero(
            matches[j * mblock : j * mblock + mblock - m + 1]
        ))
    eta = (mblock - m + 1) / 2.0**m / 2.0
    pi = [_overlap_prob(u, eta) for u in range(5)]
    pi.append(1.0 - sum(pi))
    nu = np.bincount(np.minimum(hits, 5), minlength=6).astype(np.float64)
    expected = nblocks * np.asarray(pi)
    chi2 = float(np.sum((nu - expected) ** 2 / expected))
    return _single("OT", igamc(5 / 2.0, chi2 / 2.0))


# ------------------------------------------------------------ 9. Uni

_UNIVERSAL_EXPECTED = {
    6: (5.2177052, 2.954), 7: (6.1962507, 3.125), 8: (7.1836656, 3.238),
    9: (8.1764248, 3.311), 10: (9.1723243, 3.356), 11: (10.170032, 3.384),
    12: (11.168765, 3.401), 13: (12.168070, 3.410), 14: (13.167693, 3.416),
    15: (14.167488, 3.419), 16: (15.167379, 3.421),
}

_UNIVERSAL_THRESHOLDS = (
    (1059061760, 16), (496435200, 15), (231669760, 14), (107560960, 13),
    (49643520, 12), (22753280, 11), (10342400, 10), (4654080, 9),
    (2068480, 8), (904960, 7), (387840, 6),
)


def universal_test(bits, cfg):
    n = len(bits)
    if cfg.universal_l is not None:
        level = cfg.universal_l
    else:
        for threshold, candidate in _UNIVERSAL_THRESHOLDS:
            if n >= threshold:
                level = candidate
                break
        else:
            return _single("Uni", None, "needs at least 387840 bits")
    if level not in _UNIVERSAL_EXPECTED:
        raise ParameterError(f"universal block length {level} unsupported")
    q = 10 * (1 << level)
    nblocks = n // level
    k = nblocks - q
    if k < 1:
        return _single("Uni", None, "not enough blocks after the init segment")
    weights = 1 << np.arange(level - 1, -1, -1, dtype=np.int64)
    vals = bits[: nblocks * level].reshape(nblocks, level).astype(np.int64) @ weights
    total = kernels.universal_sum(vals, q, k, 1 << level)
    expected, variance = _UNIVERSAL_EXPECTED[level]
    c = 0.7 - 0.8 / level + (4.0 + 32.0 / level) * k ** (-3.0 / level) / 15.0
    sigma = c * math.sqrt(variance / k)
    fn = total / k
    return _single("Uni", erfc(abs(fn - expected) / (math.sqrt(2.0) * sigma)))


# ------------------------------------------------------------ 10. LC

# class probabilities as shipped in the reference suite's code; its first
# entry is a truncation of the theoretical 0.010417, and matching the
# published example p-values requires the shipped value
_LC_PI = (0.01047, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833)


def linear_complexity_test(bits, cfg):
    m = cfg.lc_block
    n = len(bits)
    nblocks = n // m
    if nblocks < 1:
        return _single("LC", None, f"needs at least one block of {m} bits")
    words = (m + 1 + 63) // 64
    padded = np.zeros((nblocks, words * 64), dtype=np.uint8)
    padded[:, :m] = bits[: nblocks * m].reshape(nblocks, m)
    packed = np.ascontiguousarray(
        np.packbits(padded, axis=1, bitorder="little")
    ).view(np.uint64)
    lengths = kernels.berlekamp_massey_batch(packed, m)
    sign = 1.0 if m % 2 == 0 else -1.0
    mu = (m / 2.0 + (9.0 + (-1.0) ** (m + 1)) / 36.0
          - (m / 3.0 + 2.0 / 9.0) / 2.0**m)
    t = sign * (lengths - mu) + 2.0 / 9.0
    edges = np.array([-2.5, -1.5, -0.5, 0.5, 1.5, 2.5])
    classes = np.searchsorted(edges, t, side="left")
    nu = np.bincount(classes, minlength=7).astype(np.float64)
    expected = nblocks * np.asarray(_LC_PI)
    chi2 = float(np.sum((nu - expected) ** 2 / expected))
    return _single("LC", igamc(3.0, chi2 / 2.0))


# ------------------------------------------------------------ 11. Seri

def _psi_squared_from_vals(vals, m, n):
    if m < 1:
        return 0.0
    counts = np.bincount(vals, minlength=1 << m)
    return (1 << m) / n * float(np.sum(counts.astype(np.float64) ** 2)) - n


def serial_test(bits, cfg):
    m = cfg.serial_m
    n = len(bits)
    vals = _window_values(bits, m, wrap=True)
    psi_m = _psi_squared_from_vals(vals, m, n)
    psi_m1 = _psi_squared_from_vals(vals >> 1, m - 1, n)
    psi_m2 = _psi_squared_from_vals(vals >> 2, m - 2, n)
    d1 = psi_m - psi_m1
    d2 = psi_m - 2.0 * psi_m1 + psi_m2
    return [
        SubItemResult("p1", igamc(2 ** (m - 2), d1 / 2.0)),
        SubItemResult("p2", igamc(2 ** (m - 3), d2 / 2.0)),
    ]


# ------------------------------------------------------------ 12. AE

def _phi_from_vals(vals, n):
    counts = np.bincount(vals)
    counts = counts[counts > 0].astype(np.float64)
    props = counts / n
    return float(np.sum(props * np.log(props)))


def approximate_entropy_test(bits, cfg):
    m = cfg.apen_m
    n = len(bits)
    vals = _window_values(bits, m + 1, wrap=True)
    apen = _phi_from_vals(vals >> 1, n) - _phi_from_vals(vals, n)
    chi2 = 2.0 * n * (LN2 - apen)
    return _single("AE", igamc(2 ** (m - 1), chi2 / 2.0))


# ------------------------------------------------------------ 13. CS

def _trunc_div(a: int, b: int) -> int:
    """Integer division truncating toward zero (how the reference suite's
    C code evaluates the summation limits)."""
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _cusum_p(z: int, n: int) -> float:
    sqn = math.sqrt(n)
    term1 = 0.0
    for k in range(_trunc_div(_trunc_div(-n, z) + 1, 4),
                   _trunc_div(_trunc_div(n, z) - 1, 4) + 1):
        term1 += (normal_cdf((4 * k + 1) * z / sqn)
                  - normal_cdf((4 * k - 1) * z / sqn))
    term2 = 0.0
    for k in range(_trunc_div(_trunc_div(-n, z) - 3, 4),
                   _trunc_div(_trunc_div(n, z) - 1, 4) + 1):
        term2 += (normal_cdf((4 * k + 3) * z / sqn)
                  - normal_cdf((4 * k + 1) * z / sqn))
    return 1.0 - term1 + term2


def cumulative_sums_test(bits, cfg):
    n = len(bits)
    x = 2 * bits.astype(np.int64) - 1
    forward = np.cumsum(x)
    z_f = int(np.max(np.abs(forward)))
    backward = np.cumsum(x[::-1])
    z_b = int(np.max(np.abs(backward)))
    return [
        SubItemResult("forward", _cusum_p(z_f, n)),
        SubItemResult("backward", _cusum_p(z_b, n)),
    ]


# ------------------------------------------------------------ 14. RE

RE_STATES = (-4, -3, -2, -1, 1, 2, 3, 4)
REV_STATES = tuple(x for x in range(-9, 10) if x != 0)


def _walk(bits):
    x = 2 * bits.astype(np.int64) - 1
    s = np.cumsum(x)
    zeros = np.flatnonzero(s == 0)
    cycles = len(zeros) + (1 if s[-1] != 0 else 0)
    return s, zeros, cycles


def _excursion_constraint(n: int) -> float:
    return max(0.005 * math.sqrt(n), 500.0)


def _re_class_probs(x: int) -> np.ndarray:
    ax = abs(x)
    p0 = 1.0 - 1.0 / (2.0 * ax)
    probs = [p0]
    for k in range(1, 5):
        probs.append(1.0 / (4.0 * ax * ax) * p0 ** (k - 1))
    probs.append(1.0 / (2.0 * ax) * p0**4)
    return np.asarray(probs)


def random_excursions_test(bits, cfg):
    n = len(bits)
    s, zeros, cycles = _walk(bits)
    if cycles < _excursion_constraint(n):
        note = f"{cycles} cycles, below the {_excursion_constraint(n):.0f} minimum"
        return [SubItemResult(f"x={x:+d}", None, note) for x in RE_STATES]
    # cycle index of position i = zeros among s[0..i-1]; only positions with
    # |s| <= 4 can contribute visits
    zero_mask = s == 0
    cycle_id = np.zeros(len(s), dtype=np.int64)
    np.cumsum(zero_mask[:-1], out=cycle_id[1:])
    near = np.abs(s) <= 4
    s_near = s[near]
    cid_near = cycle_id[near]
    results = []
    for x in RE_STATES:
        per_cycle = np.bincount(cid_near[s_near == x], minlength=cycles)
        nu = np.bincount(np.minimum(per_cycle, 5), minlength=6).astype(np.float64)
        expected = cycles * _re_class_probs(x)
        chi2 = float(np.sum((nu - expected) ** 2 / expected))
        results.append(SubItemResult(f"x={x:+d}", igamc(2.5, chi2 / 2.0)))
    return results


# ------------------------------------------------------------ 15. REV

def random_excursions_variant_test(bits, cfg):
    n = len(bits)
    s, zeros, cycles = _walk(bits)
    if cycles < _excursion_constraint(n):
        note = f"{cycles} cycles, below the {_excursion_constraint(n):.0f} minimum"
        return [SubItemResult(f"x={x:+d}", None, note) for x in REV_STATES]
    in_range = s[(s >= -9) & (s <= 9)]
    visit_counts = np.bincount(in_range + 9, minlength=19)
    results = []
    for x in REV_STATES:
        xi = int(visit_counts[x + 9])
        denom = math.sqrt(2.0 * cycles * (4.0 * abs(x) - 2.0))
        results.append(
            SubItemResult(f"x={x:+d}", erfc(abs(xi - cycles) / denom))
        )
    return results


# ------------------------------------------------------- registry

@dataclass(frozen=True)
class TestDef:
    number: int
    test_id: str
    name: str
    func: Callable
    min_bits: int | Callable[[SuiteConfig], int]
    sub_item_count: int | Callable[[SuiteConfig], int]

    def minimum_bits(self, cfg: SuiteConfig) -> int:
        return self.min_bits(cfg) if callable(self.min_bits) else self.min_bits

    def sub_items(self, cfg: SuiteConfig) -> int:
        return (self.sub_item_count(cfg) if callable(self.sub_item_count)
                else self.sub_item_count)


TESTS: dict[str, TestDef] = {
    t.test_id: t
    for t in (
        TestDef(1, "Freq", "Frequency (Monobit)", frequency_test, 100, 1),
        TestDef(2, "BF", "Frequency within a Block", block_frequency_test,
                100, 1),
        TestDef(3, "Run", "Runs", runs_test, 100, 1),
        TestDef(4, "LR", "Longest Run of Ones in a Block", longest_run_test,
                128, 1),
        TestDef(5, "Rank", "Binary Matrix Rank", rank_test, 38912, 1),
        TestDef(6, "FFT", "Discrete Fourier Transform (Spectral)",
                spectral_test, 1000, 1),
        TestDef(7, "NOT", "Non-overlapping Template Matching",
                non_overlapping_template_test, 1_000_000,
                lambda cfg: len(aperiodic_templates(cfg.not_template_m))),
        TestDef(8, "OT", "Overlapping Template Matching",
                overlapping_template_test, 1_000_000, 1),
        TestDef(9, "Uni", "Maurer's Universal Statistical",
                universal_test, 387_840, 1),
        TestDef(10, "LC", "Linear Complexity", linear_complexity_test,
                1_000_000, 1),
        TestDef(11, "Seri", "Serial", serial_test,
                lambda cfg: 1 << (cfg.serial_m + 2), 2),
        TestDef(12, "AE", "Approximate Entropy", approximate_entropy_test,
                lambda cfg: 1 << (cfg.apen_m + 5), 1),
        TestDef(13, "CS", "Cumulative Sums", cumulative_sums_test, 100, 2),
        TestDef(14, "RE", "Random Excursions", random_excursions_test,
                1_000_000, 8),
        TestDef(15, "REV", "Random Excursions Variant",
                random_excursions_variant_test, 1_000_000, 18),
    )
}

TEST_ORDER = tuple(TESTS)


def run_named_test(test_id: str, bits: np.ndarray, cfg: SuiteConfig) -> TestResult:
    """Run one test; below its recommended minimum every sub-item is
    marked inapplicable rather than failed."""
    if test_id not in TESTS:
        raise ParameterError(f"unknown test id {test_id!r}")
    tdef = TESTS[test_id]
    minimum = tdef.minimum_bits(cfg)
    if len(bits) < minimum:
        note = f"sequence of {len(bits)} bits below recommended minimum {minimum}"
        return TestResult(test_id, (SubItemResult(test_id, None, note),))
    return TestResult(test_id, tuple(tdef.func(bits, cfg)))


def run_all_tests(bits: np.ndarray, cfg: SuiteConfig) -> list[TestResult]:
    return [run_named_test(test_id, bits, cfg) for test_id in TEST_ORDER]
