"""Multi-sequence pass/fail classification and per-keystream fault records.

A sub-item passes when (i) the share of sequences with p >= alpha stays
inside the three-sigma band around 1 - alpha and (ii) the chi-square
uniformity p-value of its per-sequence p-values (ten bins) reaches 1e-4.
Sub-items that were inapplicable for every sequence stay unclassified and
never count as faults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from drtbench.errors import ParameterError
from drtbench.sts.nist_tests import (
    SuiteConfig,
    TEST_ORDER,
    TESTS,
    TestResult,
)
from drtbench.sts.special import igamc

UNIFORMITY_THRESHOLD = 1e-4


def uniformity_p_value(p_values: np.ndarray) -> float:
    """Chi-square over ten equal bins; p = 1.0 lands in the top bin."""
    edges = np.linspace(0.0, 1.0, 11)
    counts, _ = np.histogram(p_values, bins=edges)
    expected = len(p_values) / 10.0
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    return igamc(9.0 / 2.0, chi2 / 2.0)


def proportion_bounds(alpha: float, sample_size: int) -> tuple[float, float]:
    center = 1.0 - alpha
    margin = 3.0 * math.sqrt(alpha * (1.0 - alpha) / sample_size)
    return center - margin, center + margin


@dataclass(frozen=True)
class SubItemOutcome:
    label: str
    sample_size: int
    proportion: Optional[float]
    proportion_pass: Optional[bool]
    uniformity_p: Optional[float]
    uniformity_pass: Optional[bool]

    @property
    def applicable(self) -> bool:
        return self.sample_size > 0

    @property
    def passed(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return bool(self.proportion_pass and self.uniformity_pass)


@dataclass(frozen=True)
class TestOutcome:
    test_id: str
    sub_items: tuple[SubItemOutcome, ...]

    @property
    def failed_count(self) -> int:
        return sum(1 for s in self.sub_items if s.passed is False)


def classify(
    results_per_sequence: list[list[TestResult]], cfg: SuiteConfig
) -> list[TestOutcome]:
    """Fold per-sequence results into one TestOutcome per test.

    Input: one list of TestResults (all fifteen tests) per sequence; the
    fold is order-independent.
    """
    if not results_per_sequence:
        raise ParameterError("classification needs at least one sequence")
    outcomes = []
    for pos, test_id in enumerate(TEST_ORDER):
        per_seq = [results[pos] for results in results_per_sequence]
        for r in per_seq:
            if r.test_id != test_id:
                raise ParameterError("sequence results are not aligned by test")
        labels: list[str] = []
        for r in per_seq:
            for item in r.sub_items:
                if item.label not in labels:
                    labels.append(item.label)
        sub_outcomes = []
        for label in labels:
            ps = [
                item.p_value
                for r in per_seq
                for item in r.sub_items
                if item.label == label and item.p_value is not None
            ]
            if not ps:
                sub_outcomes.append(
                    SubItemOutcome(label, 0, None, None, None, None)
                )
                continue
            arr = np.asarray(ps, dtype=np.float64)
            proportion = float(np.mean(arr >= cfg.alpha))
            lo, hi = proportion_bounds(cfg.alpha, len(arr))
            unif = uniformity_p_value(arr)
            sub_outcomes.append(
                SubItemOutcome(
                    label=label,
                    sample_size=len(arr),
                    proportion=proportion,
                    proportion_pass=lo <= proportion <= hi,
                    uniformity_p=unif,
                    uniformity_pass=unif >= UNIFORMITY_THRESHOLD,
                )
            )
        outcomes.append(TestOutcome(test_id, tuple(sub_outcomes)))
    return outcomes


@dataclass(frozen=True)
class FaultRecord:
    """Failed sub-item counts per test for one keystream (zeroes omitted)."""

    counts: tuple[tuple[str, int], ...]

    @property
    def fault_total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_dict(self) -> dict[str, int]:
        return dict(self.counts)


def fault_record(outcomes: list[TestOutcome]) -> FaultRecord:
    counts = []
    by_id = {o.test_id: o for o in outcomes}
    for test_id in TEST_ORDER:
        if test_id not in by_id:
            continue
        failed = by_id[test_id].failed_count
        if failed:
            counts.append((test_id, failed))
    return FaultRecord(tuple(counts))


def expected_sub_item_counts(cfg: SuiteConfig) -> dict[str, int]:
    return {tid: TESTS[tid].sub_items(cfg) for tid in TEST_ORDER}
