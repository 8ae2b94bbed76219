#!/usr/bin/env python3
"""Run every verify-* subcommand with its defaults and collect the records.

    python3 scripts/run_verifications.py [--out results/] [--seed 0]
"""

import argparse
import sys
from pathlib import Path

from cliffordlearn.cli import run

JOBS = {
    "single_qubit": ["verify-single-qubit", "--trials", "100000"],
    "moments_n2": ["verify-moments", "--n", "2"],
    "moments_n3": ["verify-moments", "--n", "3"],
    "brickwork_moments_d8": ["verify-brickwork-moments", "--depth", "8"],
    "brickwork_moments_d12": ["verify-brickwork-moments", "--depth", "12"],
    "brickwork_moments_d16": ["verify-brickwork-moments", "--depth", "16"],
    "tv_global": ["verify-tv", "--n", "8"],
    "tv_brickwork": ["verify-tv", "--n", "8", "--depth", "2"],
    "expected_tv_global": ["verify-expected-tv", "--n", "6"],
    "expected_tv_brickwork": ["verify-expected-tv", "--n", "6", "--depth", "2"],
    "chebyshev_global": ["verify-chebyshev", "--n", "8", "--tau", "0.5"],
    "chebyshev_brickwork": ["verify-chebyshev", "--n", "6", "--depth", "12", "--tau", "0.25"],
    "span_grid": ["verify-span", "--grid"],
    "frac": ["verify-frac", "--n", "6"],
    "learner": ["verify-learner"],
    "mmd": ["mmd-demo"],
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--seed", default="0")
    ap.add_argument("--only", nargs="*", choices=sorted(JOBS))
    a = ap.parse_args()
    a.out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name in a.only or JOBS:
        code = run(JOBS[name] + ["--seed", a.seed, "--timing", "--output", str(a.out / f"{name}.jsonl")])
        print(f"{name:24s} exit {code}", file=sys.stderr)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
