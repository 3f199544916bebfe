#!/usr/bin/env python3
"""Regenerate the golden CLI pipeline outputs under tests/golden/.

The pipeline is endmodel -> validate -> classify -> mesh, driven entirely
through the public CLI with the checked-in config (fixed seed, grid and
radii), so the stored files are exactly what a user would produce.  Run it
only when an intentional behavior change invalidates the stored bytes, and
eyeball the diff before committing.
"""

import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
GOLDEN = os.path.join(ROOT, "tests", "golden")
sys.path.insert(0, os.path.join(ROOT, "src"))

from nullsl2.cli import main  # noqa: E402


def run(argv):
    code = main(argv)
    if code != 0:
        raise SystemExit(f"pipeline step failed with exit code {code}: {argv}")


def regenerate():
    os.environ.pop("NULLSL2_SEED", None)
    cfg = os.path.join(GOLDEN, "config.json")
    curve = os.path.join(GOLDEN, "end2_curve.json")
    run(["--config", cfg, "endmodel", "--multiplicity", "2", "--out", curve])
    run(["--config", cfg, "validate", "--curve", curve,
         "--json", os.path.join(GOLDEN, "validate_report.json")])
    run(["--config", cfg, "classify", "--curve", curve, "--center", "0,0",
         "--json", os.path.join(GOLDEN, "classify_report.json")])
    run(["--config", cfg, "mesh", "--curve", curve,
         "--out", os.path.join(GOLDEN, "end2.obj")])
    print(f"golden files regenerated under {GOLDEN}")


if __name__ == "__main__":
    regenerate()
