#!/usr/bin/env python3
"""Produce the golden keystream files from the straightforward per-word
reimplementation in tests/reference_ciphers.py.  Run once; the outputs are
committed and never regenerated by the test suite."""

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import reference_ciphers as ref  # noqa: E402

GOLDEN_DIR = ROOT / "src" / "drtbench" / "data" / "goldens"
GOLDEN_BYTES = 16384

KEY = bytes(range(16))
IV16 = bytes(range(16, 32))


def main():
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for cipher in ("hc128", "rabbit", "salsa20"):
        iv = IV16 if cipher == "hc128" else IV16[:8]
        for tag in ("rot", "drt"):
            data = ref.keystream(cipher, KEY, iv, GOLDEN_BYTES, tag)
            path = GOLDEN_DIR / f"{cipher}_{tag}.bin"
            path.write_bytes(data)
            print(f"wrote {path} ({len(data)} bytes)")


if __name__ == "__main__":
    main()
