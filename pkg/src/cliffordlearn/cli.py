"""Command-line front end.

Exit status: 0 when every check passes, 1 when any bound is violated,
2 on usage errors, bad parameters or unreadable circuit files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Iterable

import numpy as np

from . import experiments as ex
from .distributions import uniform
from .stabsim import BrickworkCircuit, random_brickwork, read_circuit, run_circuit, measure_all

GLOBAL_DEFAULTS = {"seed": 0, "output": "-", "format": "jsonl", "threads": 1, "timing": False}


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--seed", type=_seed, default=argparse.SUPPRESS, help="master seed (default 0)")
    g.add_argument("--output", default=argparse.SUPPRESS, help="output path, '-' for stdout")
    g.add_argument("--format", choices=("jsonl", "csv"), default=argparse.SUPPRESS)
    g.add_argument("--threads", type=_positive, default=argparse.SUPPRESS)
    g.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="include wall_time in records")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="cliffordlearn", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    p = add("gen-circuit", "emit a random brickwork circuit")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--depth", type=_nonneg, required=True)
    p.add_argument("--restrict-k", type=int)

    p = add("sample", "measure a circuit's output state")
    p.add_argument("--circuit", required=True)
    p.add_argument("--num", type=_positive, default=10)

    p = add("learn", "learn one circuit's Born distribution from samples")
    p.add_argument("--circuit")
    p.add_argument("--n", type=_positive)
    p.add_argument("--depth", type=_nonneg)
    p.add_argument("--delta", type=float, default=0.05)

    add("verify-single-qubit", "exact single-qubit bias").add_argument("--trials", type=_nonneg, default=0)

    p = add("verify-moments", "global Clifford moments")
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--trials", type=_positive, default=50_000)

    p = add("verify-brickwork-moments", "brickwork second-moment bound")
    p.add_argument("--n", type=_positive, default=8)
    p.add_argument("--depth", type=_nonneg, default=12)
    p.add_argument("--trials", type=_positive, default=10_000)

    for name, help_ in (("verify-tv", "far-from-uniform fraction"), ("verify-expected-tv", "expected TV to uniform")):
        p = add(name, help_)
        p.add_argument("--n", type=_positive, default=6)
        p.add_argument("--depth", type=_nonneg, help="brickwork depth; omit for the global ensemble")
        p.add_argument("--trials", type=_positive, default=10_000)
        if name == "verify-tv":
            p.add_argument("--eps", type=float, default=0.1)

    p = add("verify-chebyshev", "distinguishing probability of one query")
    p.add_argument("--n", type=_positive, default=8)
    p.add_argument("--depth", type=_nonneg)
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--phi", default="random-parity", help="random-parity | zero | parity:<bits>")
    p.add_argument("--trials", type=_positive, default=10_000)

    p = add("verify-span", "span probability of random vectors")
    p.add_argument("--k", type=_nonneg, default=5)
    p.add_argument("--n", type=_positive, default=3)
    p.add_argument("--trials", type=_positive, default=100_000)
    p.add_argument("--grid", action="store_true", help="all n <= 6, k <= 10")

    p = add("verify-frac", "post-selected distinguishing fraction")
    p.add_argument("--n", type=_positive, default=6)
    p.add_argument("--depth", type=_nonneg)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--tau", type=float, default=0.25)
    p.add_argument("--phi", default="random-parity")
    p.add_argument("--trials", type=_positive, default=10_000)

    p = add("verify-learner", "learner success rate over random brickwork targets")
    p.add_argument("--n", type=_positive, default=12)
    p.add_argument("--depth", type=_nonneg, default=24)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--trials", type=_positive, default=500)
    p.add_argument("--restrict-k", type=int)

    p = add("mmd-demo", "MMD cross term via SQ against the plug-in estimate")
    p.add_argument("--n", type=_positive, default=6)
    p.add_argument("--instances", type=_positive, default=100)
    p.add_argument("--mode", choices=("exact", "grid", "empirical"), default="grid")
    p.add_argument("--tau", type=float, default=0.05)
    p.add_argument("--model-samples", type=_positive, default=20)
    return parser


# --- commands ---------------------------------------------------------------------


def _cfg(a, **kw) -> ex.ExperimentConfig:
    return ex.ExperimentConfig(seed=a.seed, threads=a.threads, **kw)


def cmd_gen_circuit(a) -> list[dict]:
    c = random_brickwork(a.n, a.depth, np.random.default_rng([a.seed, 0]), a.restrict_k)
    return [c.to_dict()]


def _load(path: str) -> BrickworkCircuit:
    try:
        return read_circuit(path)
    except OSError as e:
        raise UsageError(f"cannot read circuit file {path}: {e.strerror}") from None
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"malformed circuit file {path}: {e}") from None


def cmd_sample(a) -> list[dict]:
    state = run_circuit(_load(a.circuit))
    rng = np.random.default_rng([a.seed, 0])
    return [{"index": i, "x": str(measure_all(state, rng))} for i in range(a.num)]


def cmd_learn(a) -> list[dict]:
    rng = np.random.default_rng([a.seed, 0])
    if a.circuit:
        circuit = _load(a.circuit)
    else:
        if a.n is None or a.depth is None:
            raise UsageError("learn needs --circuit or both --n and --depth")
        circuit = random_brickwork(a.n, a.depth, rng)
    if not 0 < a.delta < 1:
        raise UsageError("--delta must lie in (0, 1)")
    r = ex.learn_circuit(circuit, a.delta, rng)
    model, truth = r.pop("model"), r.pop("truth")
    ok = r["samples_used"] == r["expected_samples"]
    return [
        {
            "experiment": "learn",
            "config": {"n": circuit.n, "d": circuit.d, "delta": a.delta, "seed": a.seed},
            **r,
            "learned": model.distribution().to_dict(),
            "truth": {"basis": [str(c) for c in truth.directions()], "offset": str(truth.offset)},
            "passed": ok,
        }
    ]


def cmd_single_qubit(a):
    return [ex.single_qubit_bias_experiment(a.trials, a.seed)]


def cmd_moments(a):
    return [ex.moment_experiment(_cfg(a, n=a.n, trials=a.trials))]


def cmd_brickwork_moments(a):
    return [ex.brickwork_moment_experiment(_cfg(a, n=a.n, d=a.depth, trials=a.trials))]


def cmd_tv(a):
    return [ex.tv_far_fraction_experiment(_cfg(a, n=a.n, d=a.depth, trials=a.trials, eps=a.eps))]


def cmd_expected_tv(a):
    return [ex.expected_tv_experiment(_cfg(a, n=a.n, d=a.depth, trials=a.trials))]


def cmd_chebyshev(a):
    return [ex.chebyshev_numerator_experiment(_cfg(a, n=a.n, d=a.depth, trials=a.trials, tau=a.tau, phi=a.phi))]


def cmd_span(a):
    if a.grid:
        return [ex.span_experiment(k, n, a.trials, a.seed) for n in range(1, 7) for k in range(11)]
    return [ex.span_experiment(a.k, a.n, a.trials, a.seed)]


def cmd_frac(a):
    cfg = _cfg(a, n=a.n, d=a.depth, trials=a.trials, tau=a.tau, eps=a.eps, phi=a.phi)
    phi = ex.parse_phi(a.phi, a.n, np.random.default_rng([a.seed, 2**32]))
    return [ex.frac_experiment(cfg, uniform(a.n), phi)]


def cmd_learner(a):
    return [ex.learner_success_experiment(_cfg(a, n=a.n, d=a.depth, trials=a.trials, delta=a.delta, restrict_k=a.restrict_k))]


def cmd_mmd(a):
    return [ex.mmd_experiment(a.n, a.instances, a.seed, a.mode, a.tau, a.model_samples)]


COMMANDS = {
    "gen-circuit": cmd_gen_circuit,
    "sample": cmd_sample,
    "learn": cmd_learn,
    "verify-single-qubit": cmd_single_qubit,
    "verify-moments": cmd_moments,
    "verify-brickwork-moments": cmd_brickwork_moments,
    "verify-tv": cmd_tv,
    "verify-expected-tv": cmd_expected_tv,
    "verify-chebyshev": cmd_chebyshev,
    "verify-span": cmd_span,
    "verify-frac": cmd_frac,
    "verify-learner": cmd_learner,
    "mmd-demo": cmd_mmd,
}


# --- output ----------------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, np.generic):
        return v.item()
    raise TypeError(f"cannot serialise {type(v).__name__}")


def render_jsonl(rows: Iterable[dict]) -> str:
    return "".join(json.dumps(r, default=_jsonable, allow_nan=False) + "\n" for r in rows)


def render_csv(rows: list[dict]) -> str:
    """One line per check for experiment records, one line per dict otherwise."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows and "checks" in rows[0]:
        w.writerow(["experiment", "check", "estimate", "stderr", "bound", "kind", "passed"])
        for r in rows:
            for c in r["checks"]:
                w.writerow([r["experiment"], c["name"], repr(c["estimate"]), repr(c["stderr"]), repr(c["bound"]), c["kind"], c["passed"]])
    elif rows:
        keys = list(rows[0])
        w.writerow(keys)
        for r in rows:
            w.writerow([json.dumps(r[k], default=_jsonable) if isinstance(r[k], (dict, list)) else r[k] for k in keys])
    return buf.getvalue()


def _summary(rows: list[dict]) -> str:
    """Human-readable tail for stderr."""
    out = []
    for r in rows:
        if "checks" in r:
            for c in r["checks"]:
                tag = "PASS" if c["passed"] else "FAIL"
                out.append(f"{tag} {r['experiment']}.{c['name']}: {c['estimate']:.6g} (se {c['stderr']:.2g}, bound {c['bound']})")
            if "exact" in r.get("extra", {}):
                out.append(f"exact value {r['extra']['exact']}")
    return "\n".join(out)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(a, k):
            setattr(a, k, v)
    try:
        results = COMMANDS[a.command](a)
    except (UsageError, ex.ExperimentAborted, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rows = [r.to_dict(timing=a.timing) if isinstance(r, ex.ExperimentRecord) else r for r in results]
    text = render_csv(rows) if a.format == "csv" else render_jsonl(rows)
    if a.output == "-":
        sys.stdout.write(text)
    else:
        with open(a.output, "w") as fh:
            fh.write(text)
    summary = _summary(rows)
    if summary:
        print(summary, file=sys.stderr)
    return 0 if all(r.get("passed", True) for r in rows) else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
