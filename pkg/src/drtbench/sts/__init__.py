"""Statistical randomness test suite (the fifteen classic tests)."""

from drtbench.sts.bitstream import BitStream, bits_to_bytes, bytes_to_bits, partition
from drtbench.sts.classify import (
    FaultRecord,
    SubItemOutcome,
    TestOutcome,
    classify,
    expected_sub_item_counts,
    fault_record,
    proportion_bounds,
    uniformity_p_value,
)
from drtbench.sts.nist_tests import (
    SubItemResult,
    SuiteConfig,
    TEST_ORDER,
    TESTS,
    TestResult,
    aperiodic_templates,
    run_all_tests,
    run_named_test,
)

__all__ = [
    "BitStream",
    "FaultRecord",
    "SubItemOutcome",
    "SubItemResult",
    "SuiteConfig",
    "TEST_ORDER",
    "TESTS",
    "TestOutcome",
    "TestResult",
    "aperiodic_templates",
    "bits_to_bytes",
    "bytes_to_bits",
    "classify",
    "expected_sub_item_counts",
    "fault_record",
    "partition",
    "proportion_bounds",
    "run_all_tests",
    "run_named_test",
    "uniformity_p_value",
]
