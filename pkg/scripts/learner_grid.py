#!/usr/bin/env python3
"""Learner success over (n, d, delta) next to the exact success law.

The shifted first sample is always zero, so a run succeeds exactly when the
other k - 1 shifted samples span the direction space: P(k - 1, m) for a
target of dimension m. The table prints the empirical rate, that
prediction averaged over targets, and the nominal 1 - delta.
"""

import argparse

from cliffordlearn.experiments import ExperimentConfig, learner_success_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    a = ap.parse_args()
    print(f"{'delta':>6} {'n':>3} {'d':>3} {'k':>3} {'rate':>7} {'se':>6} {'P(k-1,m)':>9} {'1-delta':>8}")
    for delta in (0.5, 0.25, 0.05):
        for n in (4, 8, 12):
            for d in sorted({2, n, 3 * n}):
                cfg = ExperimentConfig(n=n, d=d, trials=a.trials, delta=delta, seed=a.seed, threads=a.threads)
                r = learner_success_experiment(cfg)
                k = r.extra["samples_per_trial"]
                print(f"{delta:6.2f} {n:3d} {d:3d} {k:3d} {r.estimate:7.4f} {r.stderr:6.4f} {r.extra['predicted_success']:9.4f} {1 - delta:8.2f}")


if __name__ == "__main__":
    main()
