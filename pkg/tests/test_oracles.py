from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import chisquare

from cliffordlearn.distributions import (
    AffineUniform,
    Constant,
    GaussianKernel,
    KernelSection,
    Parity,
    Table,
    expectation,
    uniform,
)
from cliffordlearn.f2core import AffineSubspace, BitVec
from cliffordlearn.oracles import (
    CodomainError,
    SampleOracle,
    SQOracle,
    generalized_sq,
    hoeffding_sample_size,
    inner_tolerance,
    mmd_plugin_estimate,
    mmd_sq_estimate,
    round_to_grid,
    simulate_sq_from_samples,
)
from cliffordlearn.stabsim import random_brickwork, random_global_support, run_circuit, tableau_zero_state


def test_sample_oracle_zero_state(rng):
    s = SampleOracle(tableau_zero_state(3), rng)
    assert {str(s.sample()) for _ in range(20)} == {"000"}
    assert s.query_count == 20
    s.samples(5)
    assert s.query_count == 25


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sample_oracle_law(n):
    rng = np.random.default_rng(n)
    t = run_circuit(random_brickwork(n, 4, rng))
    table = AffineUniform(t.affine_support()).table()
    s = SampleOracle(t, rng)
    counts = Counter(s.sample().bits for _ in range(10_000))
    support = np.nonzero(table)[0]
    assert set(counts) <= set(support.tolist())
    if len(support) > 1:
        assert chisquare([counts.get(int(v), 0) for v in support]).pvalue > 1e-3


def test_sq_examples(rng):
    U = uniform(4)
    assert SQOracle(U, 0.1).query(Parity(BitVec.from_str("0110"))) == 0
    assert round_to_grid(0.137, 0.1) == pytest.approx(0.1)
    assert round_to_grid(0.15, 0.1) == pytest.approx(0.1)
    assert round_to_grid(-0.15, 0.1) == pytest.approx(-0.1)
    assert round_to_grid(0.16, 0.1) == pytest.approx(0.2)


def test_empirical_mode_hoeffding():
    rng = np.random.default_rng(8)
    U = uniform(6)
    phi = Parity(BitVec.from_str("110000"))
    ok = 0
    for _ in range(1000):
        o = SQOracle(U, 0.05, mode="empirical", failure_prob=0.01, rng=rng)
        ok += abs(o.query(phi)) <= 0.05
    assert ok >= 980


def test_hoeffding_size():
    assert hoeffding_sample_size(0.05, 0.01) == int(np.ceil(4 * np.log(200) / (2 * 0.0025)))
    assert hoeffding_sample_size(0.1, 0.05, (0.0, 1.0)) == int(np.ceil(np.log(40) / 0.02))
    with pytest.raises(ValueError):
        hoeffding_sample_size(0, 0.1)


def test_codomain_enforced():
    o = SQOracle(uniform(2), 0.1)
    with pytest.raises(CodomainError):
        o.query(Table(2, np.array([0, 0, 0, 2.0]), (0.0, 2.0)))
    assert o.query_count == 0


@given(st.integers(1, 6), st.floats(0.01, 1.0), st.integers(0, 2**32), st.sampled_from(["exact", "grid"]))
def test_tolerance_contract(n, tau, seed, mode):
    rng = np.random.default_rng(seed)
    P = AffineUniform(random_global_support(n, rng))
    phi = Table(n, rng.uniform(-1, 1, 1 << n))
    o = SQOracle(P, tau, mode=mode)
    v = o.query(phi)
    assert abs(expectation(P, phi) - v) <= tau
    assert o.query_count == 1


def test_grid_is_deterministic(rng):
    P = AffineUniform(random_global_support(5, rng))
    phi = Table(5, rng.uniform(-1, 1, 32))
    a = SQOracle(P, 0.07, mode="grid").query(phi)
    assert all(SQOracle(P, 0.07, mode="grid").query(phi) == a for _ in range(5))


def test_counters_are_exact(rng):
    o = SQOracle(uniform(3), 0.2, mode="empirical", rng=rng)
    for k in range(1, 6):
        o.query(Parity(BitVec.from_str("100")))
        assert o.query_count == k
        assert o.samples_used == k * hoeffding_sample_size(0.2, o.failure_prob)


def test_simulate_from_point_mass(rng):
    t = BitVec.from_str("101")
    s = SampleOracle(AffineUniform(AffineSubspace.point(t)), rng)
    phi = KernelSection(BitVec.from_str("100"), GaussianKernel((1.0,)))
    assert simulate_sq_from_samples(s, phi, 0.1, 0.05) == phi(t)


def test_simulate_from_uniform(rng):
    s = SampleOracle(uniform(5), rng)
    phi = Parity(BitVec.from_str("11000"))
    hits = sum(abs(simulate_sq_from_samples(s, phi, 0.1, 0.05)) <= 0.1 for _ in range(200))
    assert hits >= 0.95 * 200 - 3 * np.sqrt(200 * 0.05 * 0.95)


def test_generalized_identity_passthrough(rng):
    P = AffineUniform(random_global_support(4, rng))
    phi = Table(4, rng.uniform(-1, 1, 16))
    inner = SQOracle(P, 0.1)
    assert generalized_sq(inner, phi) == pytest.approx(expectation(P, phi), abs=1e-15)


class _Adversary(SQOracle):
    """Exact oracle that always answers at the edge of its tolerance."""

    def query(self, phi):
        v = super().query(phi)
        return v + self.tolerance if v + self.tolerance <= 1 else v - self.tolerance


def test_generalized_unit_interval_worst_case(rng):
    P = AffineUniform(random_global_support(4, rng))
    phi = Table(4, rng.uniform(0, 1, 16), (0.0, 1.0))
    tau = 0.1
    assert inner_tolerance(tau, (0.0, 1.0)) == pytest.approx(0.2)
    v = generalized_sq(_Adversary(P, 0.2), phi)
    assert abs(v - expectation(P, phi)) <= tau + 1e-12


@given(st.floats(-10, 10), st.floats(0.01, 5), st.floats(0, 1), st.floats(0.01, 0.5), st.integers(0, 2**32))
def test_generalized_tolerance(a, width, frac, tau, seed):
    b = min(a + width, 10.0)
    if b - a < 1e-3:
        return
    inner_tau = inner_tolerance(tau, (a, b))
    if inner_tau > 1:
        return
    rng = np.random.default_rng(seed)
    P = AffineUniform(random_global_support(3, rng))
    phi = Table(3, a + (b - a) * rng.uniform(0, 1, 8), (a, b))
    v = generalized_sq(_Adversary(P, inner_tau), phi)
    assert abs(v - expectation(P, phi)) <= tau * (1 + 1e-9)
    c = Constant(a + frac * (b - a), (a, b))
    assert abs(generalized_sq(SQOracle(P, inner_tau, mode="grid"), c) - c.value) <= tau * (1 + 1e-9)


def test_mmd_exact_equals_plugin(rng):
    P = AffineUniform(random_global_support(5, rng))
    Q = AffineUniform(random_global_support(5, rng))
    xs = [Q.sample(rng) for _ in range(10)]
    k = GaussianKernel((0.5, 2.0))
    assert mmd_sq_estimate(xs, k, SQOracle(P, 0.1)) == pytest.approx(mmd_plugin_estimate(xs, k, P), abs=1e-15)


@given(st.integers(0, 2**32), st.sampled_from(["exact", "grid", "empirical"]), st.floats(0.02, 0.3))
def test_mmd_within_tau(seed, mode, tau):
    rng = np.random.default_rng(seed)
    P = AffineUniform(random_global_support(4, rng))
    Q = AffineUniform(random_global_support(4, rng))
    xs = [Q.sample(rng) for _ in range(5)]
    k = GaussianKernel((1.0,))
    sq = SQOracle(P, tau, mode=mode, failure_prob=1e-9, rng=rng)
    assert abs(mmd_sq_estimate(xs, k, sq) - mmd_plugin_estimate(xs, k, P)) <= tau
    assert sq.query_count == 5
