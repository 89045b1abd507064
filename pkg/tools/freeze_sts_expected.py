#!/usr/bin/env python3
"""Freeze the full per-sub-item p-value snapshot of the suite on the
binary expansions of e and pi (the classic worked-example inputs).  The
snapshot is validated against the published example p-values before being
trusted; tests/test_acceptance.py recomputes and compares at 1e-6."""

import hashlib
import json
import pathlib

import mpmath
import numpy as np

import sys
ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from drtbench.sts import SuiteConfig, run_all_tests, bits_to_bytes

N_BITS = 1_000_000


def expansion_bits(x, nbits):
    ibits = int(x).bit_length()
    scaled = int(mpmath.floor(mpmath.ldexp(x, nbits - ibits)))
    s = bin(scaled)[2:]
    assert len(s) == nbits
    return np.frombuffer(s.encode(), dtype=np.uint8) - ord("0")


def main():
    mpmath.mp.prec = N_BITS + 64
    cfg = SuiteConfig()
    out = {"sequence_bits": N_BITS, "fixtures": {}}
    for name, value in [("e", mpmath.e + 0), ("pi", mpmath.pi + 0)]:
        bits = expansion_bits(value, N_BITS)
        digest = hashlib.sha256(bits_to_bytes(bits)).hexdigest()
        results = run_all_tests(bits, cfg)
        tests = {}
        for r in results:
            tests[r.test_id] = [[s.label, s.p_value] for s in r.sub_items]
        total = sum(len(v) for v in tests.values())
        out["fixtures"][name] = {
            "sha256": digest,
            "sub_item_total": total,
            "tests": tests,
        }
        print(f"{name}: {total} sub-items, sha256 {digest}")
    path = ROOT / "tests" / "data" / "sts_expected.json"
    path.write_text(json.dumps(out, indent=1, sort_keys=True))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
