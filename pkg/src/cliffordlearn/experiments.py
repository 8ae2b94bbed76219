"""Monte Carlo and exact checks of the moment, distance and learning bounds.

Every experiment returns an :class:`ExperimentRecord`. Verdicts use one
rule: an estimate passes against an upper bound if ``est <= bound + 3 se``,
against a lower bound if ``est >= bound - 3 se``, and against a target value
if ``|est - target| <= 3 se``. Trial ``t`` always draws from
``default_rng([seed, t])``, so records do not depend on batching or threads.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .distributions import (
    AffineUniform,
    Table,
    BornDistribution,
    GaussianKernel,
    Parity,
    StatQuery,
    expectation,
    parity_expectation,
    tv_distance,
    uniform,
)
from .f2core import AffineSubspace, BitVec, span_probability, span_probability_exact
from .learner import LearnerConfig, pac_learn
from .oracles import SampleOracle, SQOracle, generalized_sq, inner_tolerance, mmd_plugin_estimate, mmd_sq_estimate
from .stabsim import (
    BrickworkCircuit,
    StabilizerTableau,
    draw_brickwork_ids,
    random_global_support,
    run_brickwork_batch,
    run_circuit,
    supports_from_batch,
)

SIGMAS = 3.0
BATCH = 2048


class ExperimentAborted(RuntimeError):
    pass


@dataclass
class ExperimentConfig:
    n: int
    d: int | None = None  # None selects the uniform global Clifford ensemble
    trials: int = 10_000
    tau: float = 0.25
    eps: float = 0.1
    seed: int = 0
    sq_mode: str = "exact"
    phi: str = "random-parity"
    delta: float = 0.05
    restrict_k: int | None = None
    threads: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 < self.tau < 1:
            raise ValueError("tau must lie in (0, 1)")
        if not 0 <= self.eps < 1:
            raise ValueError("eps must lie in [0, 1)")

    @property
    def ensemble(self) -> str:
        return "global" if self.d is None else "brickwork"


@dataclass
class Check:
    name: str
    estimate: float
    stderr: float
    bound: float | None
    kind: str  # "upper", "lower", "equal", "exact" or "report"
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = verdict(self.estimate, self.stderr, self.bound, self.kind)


def verdict(estimate: float, stderr: float, bound: float | None, kind: str) -> bool:
    if kind == "report":
        return True
    slack = SIGMAS * stderr
    if kind == "upper":
        return estimate <= bound + slack
    if kind == "lower":
        return estimate >= bound - slack
    if kind == "equal":
        return abs(estimate - bound) <= slack
    if kind == "exact":
        return estimate == bound
    raise ValueError(f"unknown bound kind {kind!r}")


@dataclass
class ExperimentRecord:
    experiment: str
    config: dict
    estimate: float
    stderr: float
    bound: float | None
    passed: bool
    wall_time: float
    queries: int = 0
    checks: list[Check] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            del out["wall_time"]
        return out


def _record(name: str, config, checks: Sequence[Check], t0: float, queries: int = 0, **extra) -> ExperimentRecord:
    main = checks[0]
    cfg = asdict(config) if not isinstance(config, dict) else dict(config)
    cfg.pop("threads", None)  # results do not depend on it
    return ExperimentRecord(
        experiment=name,
        config=cfg,
        estimate=main.estimate,
        stderr=main.stderr,
        bound=main.bound,
        passed=all(c.passed for c in checks),
        wall_time=time.perf_counter() - t0,
        queries=queries,
        checks=list(checks),
        extra=extra,
    )


def mean_se(values: np.ndarray) -> tuple[float, float]:
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return float(values.mean()), 0.0
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))


def binomial_se(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / trials) if trials else 0.0


def trial_rng(seed: int, t: int) -> np.random.Generator:
    return np.random.default_rng([seed, t])


# --- ensembles --------------------------------------------------------------------


def _map_chunks(fn: Callable[[int, int], list], trials: int, threads: int) -> list:
    chunks = [(lo, min(lo + BATCH, trials)) for lo in range(0, trials, BATCH)]
    if threads <= 1 or len(chunks) == 1:
        parts = [fn(lo, hi) for lo, hi in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: fn(*c), chunks))
    return [item for part in parts for item in part]


def ensemble_supports(
    n: int,
    d: int | None,
    trials: int,
    seed: int,
    restrict_k: int | None = None,
    threads: int = 1,
) -> list[AffineSubspace]:
    """Supports of ``U|0>`` for ``trials`` independent draws of ``U``."""

    def chunk(lo: int, hi: int) -> list[AffineSubspace]:
        if d is None:
            return [random_global_support(n, trial_rng(seed, t)) for t in range(lo, hi)]
        ids = np.stack([draw_brickwork_ids(n, d, trial_rng(seed, t), restrict_k) for t in range(lo, hi)])
        return supports_from_batch(n, *run_brickwork_batch(n, d, ids))

    return _map_chunks(chunk, trials, threads)


def _prob_at(A: AffineSubspace, x: BitVec) -> float:
    return 2.0 ** -A.dim if A.contains(x) else 0.0


# --- single qubit ----------------------------------------------------------------

STAB1 = ("+X", "-X", "+Y", "-Y", "+Z", "-Z")


def stab1_biases() -> dict[str, Fraction]:
    """``|P(0) - P(1)|`` for each of the six single-qubit stabilizer states."""
    out = {}
    for label in STAB1:
        A = StabilizerTableau.from_stabilizers([label]).affine_support()
        out[label] = Fraction(1) if A.dim == 0 else Fraction(0)
    return out


def single_qubit_bias_exact() -> Fraction:
    b = stab1_biases()
    return sum(b.values(), Fraction(0)) / len(b)


def single_qubit_bias_experiment(trials: int = 0, seed: int = 0) -> ExperimentRecord:
    """Exact enumeration over the six states, plus an optional Monte Carlo cross-check."""
    t0 = time.perf_counter()
    exact = single_qubit_bias_exact()
    checks = [Check("exact_enumeration", float(exact), 0.0, 1.0 / 3.0, "equal")]
    checks[0].passed = exact == Fraction(1, 3)
    if trials:
        vals = np.array([1.0 if random_global_support(1, trial_rng(seed, t)).dim == 0 else 0.0 for t in range(trials)])
        checks.append(Check("monte_carlo", *mean_se(vals), 1.0 / 3.0, "equal"))
    return _record("single_qubit", {"trials": trials, "seed": seed}, checks, t0, exact=str(exact))


def expected_tv_single_qubit_exact() -> Fraction:
    """Mean TV to uniform over the six states: biased states sit at 1/2, the rest at 0."""
    b = stab1_biases()
    return sum((v / 2 for v in b.values()), Fraction(0)) / len(b)


# --- moments -------------------------------------------------------------------


def global_second_moment(n: int, same: bool) -> float:
    return (2.0 if same else 1.0) / (2**n * (2**n + 1))


def brickwork_second_moment_bound(n: int, d: int, same: bool) -> float:
    return (2.0 if same else 1.0) * (1.0 + n * 0.8**d) / 4.0**n


def _moment_samples(supports: Sequence[AffineSubspace], x: BitVec, y: BitVec) -> tuple[np.ndarray, np.ndarray]:
    px = np.array([_prob_at(A, x) for A in supports])
    py = np.array([_prob_at(A, y) for A in supports])
    return px, py


def moment_experiment(cfg: ExperimentConfig) -> ExperimentRecord:
    """First and second moments of ``P_U(x)`` against the global-Clifford formulas."""
    if cfg.n > 12:
        raise ValueError("moment experiments read exact probabilities; need n <= 12")
    t0 = time.perf_counter()
    n = cfg.n
    x = BitVec.zeros(n)
    y = BitVec(n, 1)
    sup = ensemble_supports(n, cfg.d, cfg.trials, cfg.seed, cfg.restrict_k, cfg.threads)
    px, py = _moment_samples(sup, x, y)
    checks = [
        Check("second_moment_same", *mean_se(px * px), global_second_moment(n, True), "equal"),
        Check("second_moment_distinct", *mean_se(px * py), global_second_moment(n, False), "equal"),
        Check("first_moment", *mean_se(px), 1.0 / 2**n, "equal"),
    ]
    return _record("moments", cfg, checks, t0)


def brickwork_moment_experiment(cfg: ExperimentConfig) -> ExperimentRecord:
    if cfg.d is None:
        raise ValueError("brickwork moments need a depth")
    if cfg.n > 12:
        raise ValueError("need n <= 12")
    t0 = time.perf_counter()
    n, d = cfg.n, cfg.d
    x = BitVec.zeros(n)
    y = BitVec(n, 1)
    sup = ensemble_supports(n, d, cfg.trials, cfg.seed, cfg.restrict_k, cfg.threads)
    px, py = _moment_samples(sup, x, y)
    checks = [
        Check("second_moment_same", *mean_se(px * px), brickwork_second_moment_bound(n, d, True), "upper"),
        Check("second_moment_distinct", *mean_se(px * py), brickwork_second_moment_bound(n, d, False), "upper"),
        Check("first_moment", *mean_se(px), 1.0 / 2**n, "equal"),
    ]
    in_regime = d >= 1
    if not in_regime:
        for c in checks:
            c.passed = True
    return _record(
        "brickwork_moments",
        cfg,
        checks,
        t0,
        in_regime=in_regime,
        global_value=global_second_moment(n, True),
    )


# --- distance to uniform ----------------------------------------------------------


def far_fraction_bound(eps: float) -> float:
    return (1.0 / 6.0 - eps) / (1.0 - eps)


def tv_far_fraction_experiment(cfg: ExperimentConfig) -> ExperimentRecord:
    if not 0 <= cfg.eps <= 1.0 / 6.0:
        raise ValueError("eps must lie in [0, 1/6]")
    if cfg.n > 16:
        raise ValueError("need n <= 16")
    t0 = time.perf_counter()
    sup = ensemble_supports(cfg.n, cfg.d, cfg.trials, cfg.seed, cfg.restrict_k, cfg.threads)
    ms = np.array([A.dim for A in sup])
    tv = 1.0 - np.exp2(ms - cfg.n)
    p = float(np.mean(tv >= cfg.eps))
    checks = [Check("far_fraction", p, binomial_se(p, cfg.trials), far_fraction_bound(cfg.eps), "lower")]
    return _record("tv_far_fraction", cfg, checks, t0, deficient_fraction=float(np.mean(ms < cfg.n)))


def expected_tv_experiment(cfg: ExperimentConfig) -> ExperimentRecord:
    if cfg.n > 16:
        raise ValueError("need n <= 16")
    t0 = time.perf_counter()
    sup = ensemble_supports(cfg.n, cfg.d, cfg.trials, cfg.seed, cfg.restrict_k, cfg.threads)
    tv = np.array([tv_distance(AffineUniform(A), uniform(cfg.n)) for A in sup])
    checks = [Check("expected_tv", *mean_se(tv), 1.0 / 6.0, "lower")]
    return _record("expected_tv", cfg, checks, t0)


# --- distinguishing probabilities -------------------------------------------------


def chebyshev_bound(n: int, d: int | None, tau: float) -> float:
    """Chebyshev bound on ``Pr[|P_U[phi] - U[phi]| > tau]`` from the second moments.

    Brickwork: summing the moment bound minus ``4**-n`` over all ``(x, y)``
    gives ``Var <= 4**-n (2**n + n (4/5)**d (4**n + 2**n))``.
    """
    if d is None:
        return 1.0 / (2**n * tau**2)
    r = n * 0.8**d
    var = (2.0**n + r * (4.0**n + 2.0**n)) / 4.0**n
    return var / tau**2


def parse_phi(desc: str, n: int, rng: np.random.Generator) -> StatQuery:
    """``random-parity`` | ``zero`` | ``parity:<bits>``."""
    if desc == "random-parity":
        s = 0
        while not s:
            s = int(rng.integers(1 << n))
        return Parity(BitVec(n, s))
    if desc == "zero":
        return Parity(BitVec.zeros(n))
    if desc.startswith("parity:"):
        s = BitVec.from_str(desc.split(":", 1)[1])
        if s.n != n:
            raise ValueError(f"parity string has length {s.n}, expected {n}")
        return Parity(s)
    raise ValueError(f"unknown query descriptor {desc!r}")


def _expect_on(A: AffineSubspace, phi: StatQuery) -> float:
    if isinstance(phi, Parity):
        return float(parity_expectation(A, phi.s))
    return expectation(AffineUniform(A), phi)


def chebyshev_numerator_experiment(cfg: ExperimentConfig) -> ExperimentRecord:
    if cfg.n > 12:
        raise ValueError("need n <= 12")
    t0 = time.perf_counter()
    phi = parse_phi(cfg.phi, cfg.n, np.random.default_rng([cfg.seed, 2**32]))
    base = expectation(uniform(cfg.n), phi)
    sup = ensemble_supports(cfg.n, cfg.d, cfg.trials, cfg.seed, cfg.restrict_k, cfg.threads)
    vals = np.array([_expect_on(A, phi) for A in sup])
    hit = np.abs(vals - base) > cfg.tau
    p = float(hit.mean())
    bound = chebyshev_bound(cfg.n, cfg.d, cfg.tau)
    checks = [Check("distinguishing_probability", p, binomial_se(p, cfg.trials), bound, "upper")]
    return _record(
        "chebyshev_numerator",
        cfg,
        checks,
        t0,
        phi=getattr(phi, "s", None) and str(phi.s),
        variance_estimate=float(np.var(vals)),
        variance_bound=bound * cfg.tau**2,
    )


def frac_experiment(cfg: ExperimentConfig, D0: BornDistribution, phi: StatQuery) -> ExperimentRecord:
    """Distinguishing fraction of ``phi`` under the ensemble post-selected on ``d_TV(P_U, D0) >= eps``."""
    t0 = time.perf_counter()
    sup = ensemble_supports(cfg.n, cfg.d, cfg.trials, cfg.seed, cfg.restrict_k, cfg.threads)
    base = expectation(D0, phi)
    accepted = [A for A in sup if tv_distance(AffineUniform(A), D0) >= cfg.eps]
    rate = len(accepted) / cfg.trials
    if rate < 1e-3:
        raise ExperimentAborted(f"post-selection acceptance rate {rate:.2e} is below 1e-3")
    hits = np.array([abs(_expect_on(A, phi) - base) > cfg.tau for A in accepted], dtype=float)
    frac = float(hits.mean())
    frac_se = binomial_se(frac, len(accepted))
    rate_se = binomial_se(rate, cfg.trials)
    # the bounds below are only known for a uniform reference
    if isinstance(D0, AffineUniform) and D0.m == D0.n:
        checks = [Check("distinguishing_fraction", frac, frac_se, chebyshev_bound(cfg.n, cfg.d, cfg.tau) / rate, "upper")]
        if cfg.eps <= 1.0 / 6.0:
            checks.append(Check("acceptance_rate", rate, rate_se, far_fraction_bound(cfg.eps), "lower"))
    else:
        checks = [Check("distinguishing_fraction", frac, frac_se, None, "report")]
    return _record(
        "frac",
        cfg,
        checks,
        t0,
        acceptance_rate=rate,
        accepted=len(accepted),
        rsd_witness=(1.0 / frac) if frac > 0 else None,
        censored=frac == 0,
    )


# --- span probability -----------------------------------------------------------


def batch_rank(rows: np.ndarray, n: int) -> np.ndarray:
    """GF(2) rank of each ``(k,)`` row-bitset block in a ``(trials, k)`` int array."""
    rows = np.array(rows, dtype=np.int64, copy=True)
    t, k = rows.shape
    rank = np.zeros(t, dtype=np.int64)
    if k == 0:
        return rank
    idx = np.arange(t)
    for bit in range(n):
        mask = np.int64(1 << bit)
        has = (rows & mask) != 0
        any_has = has.any(axis=1)
        piv = np.argmax(has, axis=1)
        pivot_rows = rows[idx, piv]
        pivot_rows = np.where(any_has, pivot_rows, 0)
        rows = np.where(has, rows ^ pivot_rows[:, None], rows)
        rank += any_has
    return rank


def span_experiment(k: int, n: int, trials: int, seed: int = 0) -> ExperimentRecord:
    t0 = time.perf_counter()
    rng = np.random.default_rng([seed, k, n])
    ranks = batch_rank(rng.integers(0, 1 << n, size=(trials, k)), n)
    p = float(np.mean(ranks == n))
    formula = span_probability(k, n)
    checks = [Check("span_probability", p, binomial_se(formula, trials), formula, "equal")]
    return _record(
        "span",
        {"k": k, "n": n, "trials": trials, "seed": seed},
        checks,
        t0,
        formula=formula,
        exact=str(span_probability_exact(k, n)),
    )


# --- learner ------------------------------------------------------------------------


def learner_trial(n: int, d: int, delta: float, rng: np.random.Generator, restrict_k: int | None = None) -> dict:
    circuit = BrickworkCircuit.from_gate_ids(n, d, draw_brickwork_ids(n, d, rng, restrict_k))
    return learn_circuit(circuit, delta, rng)


def learn_circuit(circuit: BrickworkCircuit, delta: float, rng: np.random.Generator) -> dict:
    """Learn the Born distribution of ``circuit`` from samples and score it against the tableau."""
    n = circuit.n
    state = run_circuit(circuit)
    truth = state.affine_support()
    oracle = SampleOracle(state, rng)
    cfg = LearnerConfig(n, delta)
    model = pac_learn(oracle, cfg)
    learned = model.subspace
    success = learned == truth
    truth_dist, learned_dist = AffineUniform(truth), AffineUniform(learned)
    tv = tv_distance(learned_dist, truth_dist)
    points = [truth.element(int(c)) for c in rng.integers(1 << truth.dim, size=16)]
    points += [BitVec(n, int(v)) for v in rng.integers(1 << n, size=16)]
    pointwise = all(model.evaluate(x) == truth_dist.prob(x) for x in points)
    return {
        "success": success,
        "samples_used": oracle.query_count,
        "expected_samples": cfg.num_samples,
        "m_true": truth.dim,
        "m_learned": learned.dim,
        "tv": tv,
        "pointwise": pointwise,
        "subset": learned.is_subset_of(truth),
        "model": model,
        "truth": truth,
    }


def learner_success_experiment(cfg: ExperimentConfig) -> ExperimentRecord:
    if cfg.d is None:
        raise ValueError("learner experiment needs a brickwork depth")
    if cfg.n > 16:
        raise ValueError("need n <= 16")
    t0 = time.perf_counter()

    def chunk(lo, hi):
        out = []
        for t in range(lo, hi):
            r = learner_trial(cfg.n, cfg.d, cfg.delta, trial_rng(cfg.seed, t), cfg.restrict_k)
            r.pop("model")
            r.pop("truth")
            out.append(r)
        return out

    res = _map_chunks(chunk, cfg.trials, cfg.threads)
    succ = np.array([r["success"] for r in res], dtype=float)
    rate = float(succ.mean())
    k = LearnerConfig(cfg.n, cfg.delta).num_samples
    samples = [r["samples_used"] for r in res]
    fails = [r for r in res if not r["success"]]
    ok = [r for r in res if r["success"]]
    # x_1 xor x_1 = 0, so only k - 1 shifted samples carry information
    predicted = float(np.mean([span_probability(k - 1, r["m_true"]) for r in res]))
    checks = [
        Check("success_rate", rate, binomial_se(rate, cfg.trials), 1.0 - cfg.delta, "lower"),
        Check("samples_per_trial", float(max(samples)), 0.0, float(k), "exact"),
        Check("samples_per_trial_min", float(min(samples)), 0.0, float(k), "exact"),
        Check("tv_on_success", float(max((r["tv"] for r in ok), default=0.0)), 0.0, 0.0, "exact"),
        Check("evaluator_pointwise", float(all(r["pointwise"] for r in ok)), 0.0, 1.0, "exact"),
        Check("failures_are_strict_subsets", float(all(r["subset"] and r["m_learned"] < r["m_true"] for r in fails)), 0.0, 1.0, "exact"),
    ]
    return _record(
        "learner",
        cfg,
        checks,
        t0,
        queries=int(sum(samples)),
        samples_per_trial=k,
        predicted_success=predicted,
        failure_tvs=[r["tv"] for r in fails],
    )


# --- oracle contracts -------------------------------------------------------------


def random_affine(n: int, rng: np.random.Generator) -> AffineSubspace:
    """Support of a uniformly random stabilizer state."""
    return random_global_support(n, rng)


def sq_tolerance_experiment(mode: str, trials: int = 1000, seed: int = 0, failure_prob: float = 0.05) -> ExperimentRecord:
    """Fraction of responses violating ``|P[phi] - v| <= tau`` over random instances."""
    t0 = time.perf_counter()
    viol = 0
    queries = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        n = int(rng.integers(1, 7))
        target = AffineUniform(random_affine(n, rng))
        tau = float(rng.uniform(0.02, 0.5)) if mode != "empirical" else float(rng.uniform(0.1, 0.5))
        phi = Table(n, rng.uniform(-1, 1, size=1 << n))
        o = SQOracle(target, tau, mode=mode, failure_prob=failure_prob, rng=rng)
        v = o.query(phi)
        queries += o.query_count
        viol += abs(expectation(target, phi) - v) > tau
    rate = viol / trials
    if mode == "empirical":
        checks = [Check("violation_rate", rate, binomial_se(failure_prob, trials), failure_prob, "upper")]
    else:
        checks = [Check("violation_rate", rate, 0.0, 0.0, "exact")]
    return _record("sq_tolerance", {"mode": mode, "trials": trials, "seed": seed, "failure_prob": failure_prob}, checks, t0, queries=queries)


def generalized_sq_experiment(trials: int = 1000, seed: int = 0, mode: str = "grid") -> ExperimentRecord:
    """Random codomains ``[a, b]`` in ``[-10, 10]`` answered through a rescaled ``[-1, 1]`` oracle."""
    t0 = time.perf_counter()
    worst = 0.0
    viol = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        n = int(rng.integers(1, 7))
        a, b = np.sort(rng.uniform(-10, 10, size=2))
        tau = float(rng.uniform(0.01, 0.5))
        inner_tau = inner_tolerance(tau, (a, b))
        if inner_tau > 1:
            tau = (b - a) / 2.0
            inner_tau = 1.0
        target = AffineUniform(random_affine(n, rng))
        phi = Table(n, rng.uniform(a, b, size=1 << n), codomain=(float(a), float(b)))
        inner = SQOracle(target, inner_tau, mode=mode, rng=rng)
        v = generalized_sq(inner, phi)
        err = abs(expectation(target, phi) - v)
        worst = max(worst, err / tau)
        viol += err > tau * (1 + 1e-12)
    checks = [Check("violations", float(viol), 0.0, 0.0, "exact")]
    return _record("generalized_sq", {"trials": trials, "seed": seed, "mode": mode}, checks, t0, worst_error_over_tau=worst)


def mmd_experiment(
    n: int = 6,
    instances: int = 100,
    seed: int = 0,
    mode: str = "grid",
    tau: float = 0.05,
    model_samples: int = 20,
) -> ExperimentRecord:
    """SQ-based MMD cross term against the exact plug-in estimator."""
    t0 = time.perf_counter()
    worst = 0.0
    viol = 0
    queries = 0
    for t in range(instances):
        rng = trial_rng(seed, t)
        target = AffineUniform(random_affine(n, rng))
        model = AffineUniform(random_affine(n, rng))
        xs = [model.sample(rng) for _ in range(model_samples)]
        c = int(rng.integers(1, 4))
        kernel = GaussianKernel(tuple(float(s) for s in rng.uniform(0.1, 4.0, size=c)))
        sq = SQOracle(target, tau, mode=mode, rng=rng)
        est = mmd_sq_estimate(xs, kernel, sq)
        queries += sq.query_count
        plug = mmd_plugin_estimate(xs, kernel, target)
        err = abs(est - plug)
        worst = max(worst, err)
        viol += err > tau * (1 + 1e-12)
    checks = [Check("violations", float(viol), 0.0, 0.0, "exact")]
    return _record(
        "mmd",
        {"n": n, "instances": instances, "seed": seed, "mode": mode, "tau": tau, "model_samples": model_samples},
        checks,
        t0,
        queries=queries,
        worst_error=worst,
    )


__all__ = [
    "ExperimentAborted",
    "ExperimentConfig",
    "ExperimentRecord",
    "brickwork_moment_experiment",
    "chebyshev_numerator_experiment",
    "expected_tv_experiment",
    "frac_experiment",
    "learner_success_experiment",
    "moment_experiment",
    "single_qubit_bias_exact",
    "span_experiment",
    "tv_far_fraction_experiment",
]
