#!/usr/bin/env python3
"""Second moment E[P_U(0)^2] of brickwork circuits against depth.

Prints the estimate, the (2/4^n)(1 + n (4/5)^d) bound and the
global-Clifford value it converges to.
"""

import argparse

from cliffordlearn.experiments import ExperimentConfig, brickwork_moment_experiment, global_second_moment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--max-depth", type=int, default=24)
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    print(f"global value {global_second_moment(a.n, True):.4e}")
    print(f"{'d':>3} {'estimate':>10} {'se':>9} {'bound':>10} ok")
    for d in range(1, a.max_depth + 1):
        r = brickwork_moment_experiment(ExperimentConfig(n=a.n, d=d, trials=a.trials, seed=a.seed))
        print(f"{d:3d} {r.estimate:10.4e} {r.stderr:9.2e} {r.bound:10.4e} {'yes' if r.passed else 'NO'}")


if __name__ == "__main__":
    main()
