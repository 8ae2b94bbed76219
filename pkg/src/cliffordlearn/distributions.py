"""Born distributions, statistical queries and exact functionals over them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .f2core import AffineSubspace, BitVec, F2Matrix, orthogonal_complement

MAX_DENSE_QUBITS = 20
MAX_ENUM_DIM = 30


# --- distributions -------------------------------------------------------------


@dataclass(frozen=True)
class AffineUniform:
    """Uniform law on an affine subspace; mass ``2**-m`` per member, stored as ``m``."""

    support: AffineSubspace

    @property
    def n(self) -> int:
        return self.support.n

    @property
    def m(self) -> int:
        return self.support.dim

    def prob(self, x: BitVec) -> Fraction:
        return Fraction(1, 1 << self.m) if self.support.contains(x) else Fraction(0)

    def sample(self, rng: np.random.Generator) -> BitVec:
        from .stabsim import _randbits

        return self.support.element(_randbits(rng, self.m))

    def sample_ints(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """``size`` draws as int64 bitsets (needs n <= 62)."""
        if self.n > 62:
            raise ValueError("integer sampling needs n <= 62")
        coeffs = rng.integers(1 << self.m, size=size) if self.m else np.zeros(size, dtype=np.int64)
        out = np.full(size, self.support.offset.bits, dtype=np.int64)
        for j, col in enumerate(self.support.directions()):
            out ^= np.int64(col.bits) * ((coeffs >> j) & 1)
        return out

    def table(self) -> np.ndarray:
        _check_dense(self.n)
        out = np.zeros(1 << self.n)
        out[self.support.element_ints()] = 2.0 ** -self.m
        return out

    def to_dict(self) -> dict:
        return {
            "type": "affine",
            "n": self.n,
            "basis": [str(c) for c in self.support.directions()],
            "offset": str(self.support.offset),
        }


@dataclass(frozen=True, eq=False)
class Dense:
    """Explicit probability table indexed by the int whose bit ``q`` is coordinate ``q``."""

    n: int
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_dense(self.n)
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (1 << self.n,):
            raise ValueError(f"table must have 2**{self.n} entries")
        if (p < 0).any() or abs(p.sum() - 1.0) > 1e-12:
            raise ValueError("table is not a probability distribution")
        object.__setattr__(self, "probs", p)

    def prob(self, x: BitVec) -> float:
        if x.n != self.n:
            raise ValueError("dimension mismatch")
        return float(self.probs[x.bits])

    def sample(self, rng: np.random.Generator) -> BitVec:
        return BitVec(self.n, int(rng.choice(1 << self.n, p=self.probs)))

    def sample_ints(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.choice(1 << self.n, p=self.probs, size=size).astype(np.int64)

    def table(self) -> np.ndarray:
        return self.probs

    def to_dict(self) -> dict:
        return {"type": "dense", "n": self.n, "table": self.probs.tolist()}


BornDistribution = AffineUniform | Dense


def _check_dense(n: int) -> None:
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense tables are limited to n <= {MAX_DENSE_QUBITS}")


def distribution_from_dict(doc: dict) -> BornDistribution:
    kind = doc.get("type")
    if kind == "affine":
        return AffineUniform(AffineSubspace.from_strings(doc["basis"], doc["offset"]))
    if kind == "dense":
        return Dense(int(doc["n"]), np.array(doc["table"], dtype=float))
    raise ValueError(f"unknown distribution type {kind!r}")


def uniform(n: int) -> AffineUniform:
    if n < 1:
        raise ValueError("need n >= 1")
    return AffineUniform(AffineSubspace.full(n))


def embedded_uniform(k: int, n: int) -> AffineUniform:
    """Uniform over strings whose last ``n - k`` bits are zero."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    basis = F2Matrix.from_columns([BitVec(n, 1 << i) for i in range(k)])
    return AffineUniform(AffineSubspace(n, basis, BitVec.zeros(n)))


def _is_full(P: BornDistribution) -> bool:
    return isinstance(P, AffineUniform) and P.m == P.n


def tv_distance(P: BornDistribution, Q: BornDistribution) -> float:
    if P.n != Q.n:
        raise ValueError(f"dimension mismatch: {P.n} vs {Q.n}")
    if isinstance(P, AffineUniform) and _is_full(Q):
        return 1.0 - 2.0 ** (P.m - P.n)
    if isinstance(Q, AffineUniform) and _is_full(P):
        return 1.0 - 2.0 ** (Q.m - Q.n)
    if isinstance(P, AffineUniform) and isinstance(Q, AffineUniform):
        small, big = (P, Q) if P.m <= Q.m else (Q, P)
        if small.support.is_subset_of(big.support):
            return 1.0 - 2.0 ** (small.m - big.m)
        return float(tv_distance_exact(P, Q))
    return tv_distance_dense(P, Q)


def tv_distance_dense(P: BornDistribution, Q: BornDistribution) -> float:
    """Direct ``(1/2) sum |P - Q|`` over all ``2**n`` strings."""
    if P.n != Q.n:
        raise ValueError(f"dimension mismatch: {P.n} vs {Q.n}")
    return 0.5 * float(np.abs(P.table() - Q.table()).sum())


def tv_distance_exact(P: AffineUniform, Q: AffineUniform) -> Fraction:
    """Exact TV between two affine-uniform laws from the size of their intersection."""
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    if P.m > MAX_ENUM_DIM:
        raise ValueError("support too large to enumerate")
    small, big = (P, Q) if P.m <= Q.m else (Q, P)
    inter = sum(1 for x in small.support.elements() if big.support.contains(x))
    # sum over the intersection of |2^-a - 2^-b| plus the masses outside it
    pa, pb = Fraction(1, 1 << small.m), Fraction(1, 1 << big.m)
    total = inter * abs(pa - pb) + (1 - inter * pa) + (1 - inter * pb)
    return total / 2


# --- statistical queries ------------------------------------------------------


class StatQuery:
    """A bounded function on bit strings with a declared codomain ``[a, b]``."""

    codomain: tuple[float, float] = (-1.0, 1.0)

    def __call__(self, x: BitVec) -> float:
        return float(self.evaluate_ints(np.array([x.bits], dtype=np.int64))[0])

    def evaluate_ints(self, xs: np.ndarray) -> np.ndarray:
        raise NotImplementedError


def _parity_ints(xs: np.ndarray) -> np.ndarray:
    return np.bitwise_count(xs) & 1


@dataclass(frozen=True)
class Parity(StatQuery):
    s: BitVec
    codomain: tuple[float, float] = (-1.0, 1.0)

    def evaluate_ints(self, xs):
        return 1.0 - 2.0 * _parity_ints(np.asarray(xs, dtype=np.int64) & np.int64(self.s.bits))

    def to_json(self) -> str:
        return str(self.s)


@dataclass(frozen=True)
class Indicator(StatQuery):
    """``predicate(x)`` mapped to ``{0, 1}`` or, with ``signed=True``, ``{-1, +1}``."""

    n: int
    predicate: Callable[[BitVec], bool]
    signed: bool = False

    @property
    def codomain(self):
        return (-1.0, 1.0) if self.signed else (0.0, 1.0)

    def evaluate_ints(self, xs):
        hit = np.array([bool(self.predicate(BitVec(self.n, int(v)))) for v in np.asarray(xs)], dtype=float)
        return 2.0 * hit - 1.0 if self.signed else hit


@dataclass(frozen=True)
class GaussianKernel:
    """``K(x, y) = mean_j exp(-hamming(x, y) / (2 sigma_j))``."""

    bandwidths: tuple[float, ...]

    def __post_init__(self):
        if not self.bandwidths or any(s <= 0 for s in self.bandwidths):
            raise ValueError("bandwidths must be a non-empty list of positive reals")

    def from_distance(self, dist: np.ndarray) -> np.ndarray:
        dist = np.asarray(dist, dtype=float)
        return np.mean([np.exp(-dist / (2.0 * s)) for s in self.bandwidths], axis=0)

    def __call__(self, x: BitVec, y: BitVec) -> float:
        return float(self.from_distance(np.array((x ^ y).weight())))


@dataclass(frozen=True)
class KernelSection(StatQuery):
    """``y -> K(x0, y)``; values lie in ``(0, 1]``."""

    x0: BitVec
    kernel: GaussianKernel
    codomain: tuple[float, float] = (0.0, 1.0)

    def evaluate_ints(self, xs):
        d = np.bitwise_count(np.asarray(xs, dtype=np.int64) ^ np.int64(self.x0.bits))
        return self.kernel.from_distance(d)


@dataclass(frozen=True, eq=False)
class Table(StatQuery):
    n: int
    values: np.ndarray
    codomain: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        _check_dense(self.n)
        v = np.asarray(self.values, dtype=float)
        if v.shape != (1 << self.n,):
            raise ValueError("value table has the wrong length")
        a, b = self.codomain
        if (v < a).any() or (v > b).any():
            raise ValueError("table values leave the declared codomain")
        object.__setattr__(self, "values", v)

    def evaluate_ints(self, xs):
        return self.values[np.asarray(xs, dtype=np.int64)]


@dataclass(frozen=True)
class Constant(StatQuery):
    value: float
    codomain: tuple[float, float] = (-1.0, 1.0)

    def evaluate_ints(self, xs):
        return np.full(np.shape(xs), float(self.value))


@dataclass(frozen=True)
class Rescaled(StatQuery):
    """``f^{-1} o phi`` for ``f(u) = u (b - a)/2 + (a + b)/2``; maps ``[a, b]`` onto ``[-1, 1]``."""

    inner: StatQuery
    codomain: tuple[float, float] = (-1.0, 1.0)

    def evaluate_ints(self, xs):
        a, b = self.inner.codomain
        return (2.0 * self.inner.evaluate_ints(xs) - (a + b)) / (b - a)


# --- expectations ---------------------------------------------------------------


def expectation(P: BornDistribution, phi: StatQuery) -> float:
    """Exact ``E_{x ~ P}[phi(x)]`` by summing over the support."""
    if isinstance(P, AffineUniform):
        if P.m > MAX_ENUM_DIM:
            raise ValueError(f"support of dimension {P.m} is too large to enumerate")
        return float(np.mean(phi.evaluate_ints(P.support.element_ints())))
    xs = np.nonzero(P.probs)[0].astype(np.int64)
    return float(np.dot(P.probs[xs], phi.evaluate_ints(xs)))


def parity_expectation(A: AffineSubspace, s: BitVec) -> int:
    """Closed form of the parity expectation under the uniform law on ``A``."""
    if s.n != A.n:
        raise ValueError(f"dimension mismatch: {s.n} vs {A.n}")
    if any(s.dot(u) for u in A.directions()):
        return 0
    return -1 if s.dot(A.offset) else 1


def parity_expectation_via_complement(A: AffineSubspace, s: BitVec) -> int:
    """Same value, by testing membership of ``s`` in the orthogonal complement."""
    from .f2core import solve

    comp = orthogonal_complement(A.basis)
    if solve(comp, s) is None:
        return 0
    return -1 if s.dot(A.offset) else 1


def parity_from_str(s: str) -> Parity:
    return Parity(BitVec.from_str(s))


def all_strings(n: int) -> Sequence[BitVec]:
    return [BitVec(n, v) for v in range(1 << n)]
