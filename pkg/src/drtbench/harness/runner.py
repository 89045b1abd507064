"""Experiment execution: keystream generation, suite runs, and accounting."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from drtbench.ciphers import KeyIv, keystream_chunks, variant_by_tag
from drtbench.errors import ParameterError
from drtbench.harness.schedule import FixtureEntry, TestCase, schedule
from drtbench.sts import (
    BitStream,
    FaultRecord,
    SuiteConfig,
    classify,
    fault_record,
    run_all_tests,
)

CASES_PER_METHOD = 24


@dataclass(frozen=True)
class CaseResult:
    case: TestCase
    record: FaultRecord
    sequences: int


@dataclass(frozen=True)
class SummaryRow:
    A: int
    B: int
    B1: int
    B2: int
    B3: int

    @classmethod
    def from_fault_totals(cls, totals: list[int]) -> "SummaryRow":
        a = sum(1 for t in totals if t == 0)
        b1 = sum(1 for t in totals if t == 1)
        b2 = sum(1 for t in totals if t == 2)
        b3 = sum(1 for t in totals if t > 2)
        return cls(A=a, B=b1 + b2 + b3, B1=b1, B2=b2, B3=b3)

    def as_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "B1": self.B1, "B2": self.B2,
                "B3": self.B3}


def run_case(case: TestCase, stream_bytes: int, config: SuiteConfig) -> CaseResult:
    """Generate the case's keystream, run the full suite, count faults.

    The keystream is streamed in chunks and consumed sequence by sequence;
    the whole output is never held in memory.
    """
    if stream_bytes * 8 < config.sequence_bits:
        raise ParameterError(
            f"case {case.cipher}/{case.method}/{case.index}: stream of "
            f"{stream_bytes} bytes is shorter than one sequence"
        )
    variant = variant_by_tag(case.cipher, case.variant_tag)
    kiv = KeyIv(case.key, case.iv)

    def factory():
        return keystream_chunks(variant, kiv, stream_bytes)

    stream = BitStream(factory, stream_bytes)
    try:
        per_sequence = [
            run_all_tests(seq, config)
            for seq in stream.iter_sequences(
                config.sequence_bits, config.sequence_cap
            )
        ]
        outcomes = classify(per_sequence, config)
    except Exception as exc:
        raise type(exc)(
            f"case {case.cipher}/{case.variant_tag} method {case.method} "
            f"index {case.index}: {exc}"
        ) from exc
    return CaseResult(case, fault_record(outcomes), len(per_sequence))


def aggregate(records: list[FaultRecord]) -> SummaryRow:
    """Fold exactly 24 per-case fault records into one accounting row."""
    if len(records) != CASES_PER_METHOD:
        raise ParameterError(
            f"expected {CASES_PER_METHOD} fault records, got {len(records)}"
        )
    return SummaryRow.from_fault_totals([r.fault_total for r in records])


def totals(rows: list[SummaryRow]) -> tuple[SummaryRow, Optional[int]]:
    """Componentwise sums over the five method rows plus the B1/B percentage
    (rounded to an integer; None when B = 0)."""
    if len(rows) != len((1, 2, 3, 4, 5)):
        raise ParameterError(f"expected five method rows, got {len(rows)}")
    total = SummaryRow(
        A=sum(r.A for r in rows),
        B=sum(r.B for r in rows),
        B1=sum(r.B1 for r in rows),
        B2=sum(r.B2 for r in rows),
        B3=sum(r.B3 for r in rows),
    )
    ratio = round(100 * total.B1 / total.B) if total.B else None
    return total, ratio


@dataclass(frozen=True)
class MethodResult:
    method: int
    cases: tuple[CaseResult, ...]
    summary: SummaryRow


@dataclass(frozen=True)
class ExperimentResult:
    cipher: str
    variant_tag: str
    stream_bytes: int
    config: SuiteConfig
    methods: tuple[MethodResult, ...]

    @property
    def totals_row(self) -> Optional[SummaryRow]:
        if len(self.methods) != 5:
            return None
        return totals([m.summary for m in self.methods])[0]

    @property
    def ratio_percent(self) -> Optional[int]:
        if len(self.methods) != 5:
            return None
        return totals([m.summary for m in self.methods])[1]


def _case_task(args):
    case, stream_bytes, config = args
    return run_case(case, stream_bytes, config)


def run_experiment(
    cipher: str,
    variant_tag: str,
    methods: tuple[int, ...],
    stream_bytes: int,
    config: SuiteConfig,
    fixtures: list[FixtureEntry] | None = None,
    jobs: int = 1,
    progress: Optional[Callable[[TestCase, FaultRecord], None]] = None,
) -> ExperimentResult:
    """Run the scheduled cases for one (cipher, variant) over the methods.

    Cases are independent; jobs > 1 distributes them over worker processes.
    Results are reassembled in schedule order, so the report is identical
    however the work was distributed.
    """
    all_cases: list[TestCase] = []
    for method in methods:
        all_cases.extend(schedule(method, cipher, variant_tag, fixtures))

    if jobs <= 1:
        results = [run_case(c, stream_bytes, config) for c in all_cases]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(
                    _case_task,
                    [(c, stream_bytes, config) for c in all_cases],
                    chunksize=1,
                )
            )
    if progress is not None:
        for r in results:
            progress(r.case, r.record)

    method_results = []
    cursor = 0
    for method in methods:
        chunk = results[cursor : cursor + CASES_PER_METHOD]
        cursor += CASES_PER_METHOD
        method_results.append(
            MethodResult(
                method=method,
                cases=tuple(chunk),
                summary=aggregate([c.record for c in chunk]),
            )
        )
    return ExperimentResult(
        cipher=cipher,
        variant_tag=variant_tag,
        stream_bytes=stream_bytes,
        config=config,
        methods=tuple(method_results),
    )
