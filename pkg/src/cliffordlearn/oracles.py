"""SAMPLE and SQ oracles with query accounting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .distributions import (
    BornDistribution,
    GaussianKernel,
    KernelSection,
    Rescaled,
    StatQuery,
    expectation,
)
from .f2core import BitVec
from .stabsim import StabilizerTableau, measure_all

SQ_MODES = ("exact", "grid", "empirical")


class CodomainError(ValueError):
    pass


@dataclass
class SampleOracle:
    """I.i.d. draws from a distribution or from measuring a stabilizer state."""

    source: BornDistribution | StabilizerTableau
    rng: np.random.Generator
    query_count: int = 0

    @property
    def n(self) -> int:
        return self.source.n

    def sample(self) -> BitVec:
        self.query_count += 1
        if isinstance(self.source, StabilizerTableau):
            return measure_all(self.source, self.rng)
        return self.source.sample(self.rng)

    def samples(self, k: int) -> list[BitVec]:
        return [self.sample() for _ in range(k)]


def hoeffding_sample_size(tolerance: float, failure_prob: float, codomain=(-1.0, 1.0)) -> int:
    """Draws needed so a sample mean is within ``tolerance`` w.p. ``>= 1 - failure_prob``."""
    if tolerance <= 0 or not 0 < failure_prob < 1:
        raise ValueError("need tolerance > 0 and failure_prob in (0, 1)")
    a, b = codomain
    return math.ceil((b - a) ** 2 * math.log(2.0 / failure_prob) / (2.0 * tolerance**2))


def round_to_grid(value: float, step: float) -> float:
    """Nearest multiple of ``step``; exact halfway cases go toward zero."""
    q = value / step
    k = math.floor(abs(q))
    if abs(q) - k > 0.5:
        k += 1
    return math.copysign(k * step, q) if k else 0.0


def _sample_mean(draw, phi: StatQuery, m: int) -> float:
    xs = np.fromiter((draw().bits for _ in range(m)), dtype=np.int64, count=m)
    return _mean_of(phi.evaluate_ints(xs))


def _mean_of(vals: np.ndarray) -> float:
    if vals.min() == vals.max():
        return float(vals[0])  # pairwise summation can drift by an ulp
    return float(np.mean(vals))


@dataclass
class SQOracle:
    """``SQ_tau`` oracle with one of three response policies.

    ``exact`` returns the true expectation, ``grid`` rounds it to the nearest
    multiple of the tolerance, and ``empirical`` answers with a Hoeffding-sized
    sample mean drawn fresh for every query.
    """

    target: BornDistribution
    tolerance: float
    codomain: tuple[float, float] = (-1.0, 1.0)
    mode: str = "exact"
    failure_prob: float = 0.01
    rng: np.random.Generator | None = None
    query_count: int = 0
    samples_used: int = field(default=0)

    def __post_init__(self):
        if not 0 < self.tolerance <= 1:
            raise ValueError("tolerance must lie in (0, 1]")
        if self.mode not in SQ_MODES:
            raise ValueError(f"mode must be one of {SQ_MODES}")
        a, b = self.codomain
        if not a < b:
            raise ValueError("codomain must be a non-degenerate interval")
        if self.mode == "empirical" and self.rng is None:
            raise ValueError("empirical mode needs an rng")

    def query(self, phi: StatQuery) -> float:
        a, b = self.codomain
        pa, pb = phi.codomain
        if pa < a or pb > b:
            raise CodomainError(f"query codomain {phi.codomain} exceeds oracle codomain {self.codomain}")
        self.query_count += 1
        if self.mode == "empirical":
            m = hoeffding_sample_size(self.tolerance, self.failure_prob, self.codomain)
            self.samples_used += m
            return _mean_of(phi.evaluate_ints(self.target.sample_ints(self.rng, m)))
        value = expectation(self.target, phi)
        if self.mode == "grid":
            return round_to_grid(value, self.tolerance)
        return value

    def record(self) -> dict:
        return {
            "oracle": "SQ",
            "mode": self.mode,
            "tau": self.tolerance,
            "codomain": list(self.codomain),
            "queries": self.query_count,
        }


def sq_query(o: SQOracle, phi: StatQuery) -> float:
    return o.query(phi)


def sample(o: SampleOracle) -> BitVec:
    return o.sample()


def simulate_sq_from_samples(s: SampleOracle, phi: StatQuery, tolerance: float, failure_prob: float) -> float:
    """Answer one statistical query with a sample mean drawn from ``s``."""
    m = hoeffding_sample_size(tolerance, failure_prob, phi.codomain)
    return _sample_mean(s.sample, phi, m)


def generalized_sq(inner: SQOracle, phi: StatQuery) -> float:
    """Answer a query with codomain ``[a, b]`` using a ``[-1, 1]`` oracle.

    The response is within ``inner.tolerance * (b - a) / 2`` of the truth, so
    an inner tolerance of ``2 tau / (b - a)`` gives a ``tau``-accurate answer.
    """
    a, b = phi.codomain
    if not a < b:
        raise ValueError("query codomain is degenerate")
    u = inner.query(Rescaled(phi))
    return u * (b - a) / 2.0 + (a + b) / 2.0


def inner_tolerance(tolerance: float, codomain: tuple[float, float]) -> float:
    a, b = codomain
    return 2.0 * tolerance / (b - a)


def mmd_sq_estimate(model_samples: Sequence[BitVec], kernel: GaussianKernel, sq: SQOracle) -> float:
    """Cross term ``E_{x~P, y~Q} K(x, y)`` with one SQ query per model sample."""
    if not model_samples:
        raise ValueError("need at least one model sample")
    return float(np.mean([sq.query(KernelSection(x, kernel)) for x in model_samples]))


def mmd_plugin_estimate(model_samples: Sequence[BitVec], kernel: GaussianKernel, target: BornDistribution) -> float:
    """Same cross term with exact inner expectations."""
    return float(np.mean([expectation(target, KernelSection(x, kernel)) for x in model_samples]))


__all__ = [
    "SampleOracle",
    "SQOracle",
    "generalized_sq",
    "hoeffding_sample_size",
    "mmd_sq_estimate",
    "round_to_grid",
    "simulate_sq_from_samples",
]
