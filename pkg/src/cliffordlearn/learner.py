"""Sample-based PAC learner for affine-uniform (Clifford Born) distributions.

``recover_affine`` draws ``k = n + ceil(log2(1/delta))`` samples, shifts them
by the first one so they become uniform draws from the direction space, and
keeps a maximal independent subset as the basis. The learned model evaluates
probabilities exactly (``2**-m`` on the subspace, 0 off it) and generates
exact samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distributions import AffineUniform
from .f2core import AffineSubspace, BitVec, independent_subset, solve
from .oracles import SampleOracle


@dataclass(frozen=True)
class LearnerConfig:
    n: int
    delta: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")

    @property
    def num_samples(self) -> int:
        return self.n + math.ceil(math.log2(1.0 / self.delta))


def recover_affine(s: SampleOracle, cfg: LearnerConfig) -> AffineSubspace:
    xs = s.samples(cfg.num_samples)
    if any(x.n != cfg.n for x in xs):
        raise ValueError("sample length does not match the configured n")
    anchor = xs[0]
    shifted = [x ^ anchor for x in xs]
    return AffineSubspace(cfg.n, independent_subset(shifted, cfg.n), anchor)


@dataclass(frozen=True)
class LearnedModel:
    subspace: AffineSubspace

    @property
    def n(self) -> int:
        return self.subspace.n

    @property
    def m(self) -> int:
        return self.subspace.dim

    def evaluate(self, x: BitVec) -> Fraction:
        if x.n != self.n:
            raise ValueError(f"expected a length-{self.n} string, got {x.n}")
        b = solve(self.subspace.basis, x ^ self.subspace.offset)
        return Fraction(1, 1 << self.m) if b is not None else Fraction(0)

    def generate(self, rng: np.random.Generator) -> BitVec:
        from .stabsim import _randbits

        return self.subspace.element(_randbits(rng, self.m))

    def distribution(self) -> AffineUniform:
        return AffineUniform(self.subspace)


def evaluate(model: LearnedModel, x: BitVec) -> Fraction:
    return model.evaluate(x)


def generate(model: LearnedModel, rng: np.random.Generator) -> BitVec:
    return model.generate(rng)


def pac_learn(s: SampleOracle, cfg: LearnerConfig) -> LearnedModel:
    return LearnedModel(recover_affine(s, cfg))
