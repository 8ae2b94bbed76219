from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliffordlearn.distributions import (
    AffineUniform,
    Constant,
    Dense,
    GaussianKernel,
    Indicator,
    KernelSection,
    Parity,
    Rescaled,
    Table,
    distribution_from_dict,
    embedded_uniform,
    expectation,
    parity_expectation,
    parity_expectation_via_complement,
    tv_distance,
    tv_distance_dense,
    tv_distance_exact,
    uniform,
)
from cliffordlearn.f2core import AffineSubspace, BitVec, independent_subset

BELL = AffineSubspace.from_strings(["11"], "00")


@st.composite
def affine(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    ints = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=n))
    t = draw(st.integers(0, (1 << n) - 1))
    return AffineSubspace(n, independent_subset([BitVec(n, v) for v in ints], n), BitVec(n, t))


def brute_expectation(P, phi):
    return sum(float(P.prob(BitVec(P.n, v))) * phi(BitVec(P.n, v)) for v in range(1 << P.n))


def test_uniform():
    U = uniform(2)
    assert all(U.prob(BitVec(2, v)) == Fraction(1, 4) for v in range(4))
    assert tv_distance(uniform(5), uniform(5)) == 0


@pytest.mark.parametrize("n", range(1, 11))
def test_uniform_parities_vanish(n):
    U = uniform(n)
    for s in range(1, 1 << n, max(1, (1 << n) // 40)):
        assert expectation(U, Parity(BitVec(n, s))) == 0


def test_embedded_uniform():
    assert embedded_uniform(3, 3).support == uniform(3).support
    E = embedded_uniform(1, 2)
    assert E.prob(BitVec.from_str("00")) == E.prob(BitVec.from_str("10")) == Fraction(1, 2)
    assert E.prob(BitVec.from_str("01")) == 0
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert tv_distance(embedded_uniform(k, n), uniform(n)) == 1 - 2.0 ** (k - n)
    with pytest.raises(ValueError):
        embedded_uniform(0, 3)


def test_tv_examples():
    A = AffineUniform(AffineSubspace.from_strings(["110"], "000"))
    assert tv_distance(A, uniform(3)) == 0.75
    assert tv_distance_dense(A, uniform(3)) == 0.75
    pt = AffineUniform(AffineSubspace.point(BitVec.from_str("0110")))
    assert tv_distance(pt, uniform(4)) == 1 - 2**-4
    with pytest.raises(ValueError):
        tv_distance(uniform(2), uniform(3))


@given(affine(max_n=10))
def test_tv_fast_path_matches_direct_sum(A):
    P = AffineUniform(A)
    assert tv_distance(P, uniform(A.n)) == pytest.approx(tv_distance_dense(P, uniform(A.n)), abs=1e-12)


@given(affine(), affine())
def test_tv_exact_matches_dense(A, B):
    if A.n != B.n:
        return
    P, Q = AffineUniform(A), AffineUniform(B)
    assert float(tv_distance_exact(P, Q)) == pytest.approx(tv_distance_dense(P, Q), abs=1e-12)
    assert tv_distance(P, Q) == pytest.approx(tv_distance_dense(P, Q), abs=1e-12)


@given(affine(), affine(), affine())
def test_tv_metric(A, B, C):
    if not A.n == B.n == C.n:
        return
    P, Q, R = AffineUniform(A), AffineUniform(B), AffineUniform(C)
    assert (tv_distance(P, Q) == 0) == (A == B)
    assert tv_distance(P, Q) == tv_distance(Q, P)
    assert tv_distance(P, R) <= tv_distance(P, Q) + tv_distance(Q, R) + 1e-12


@given(affine())
def test_normalisation(A):
    P = AffineUniform(A)
    assert sum(P.prob(x) for x in A.elements()) == 1
    assert abs(P.table().sum() - 1) <= 1e-12


def test_dense_validation():
    with pytest.raises(ValueError):
        Dense(1, np.array([0.7, 0.7]))
    with pytest.raises(ValueError):
        Dense(2, np.array([0.5, 0.5]))
    D = Dense(1, np.array([0.25, 0.75]))
    assert D.prob(BitVec.from_str("1")) == 0.75


def test_serialisation_round_trip():
    P = AffineUniform(BELL)
    assert distribution_from_dict(P.to_dict()).support == BELL
    D = Dense(1, np.array([0.25, 0.75]))
    assert np.array_equal(distribution_from_dict(D.to_dict()).probs, D.probs)


def test_expectation_examples():
    assert expectation(uniform(3), Parity(BitVec.zeros(3))) == 1
    assert expectation(AffineUniform(BELL), Parity(BitVec.from_str("01"))) == 0
    assert expectation(AffineUniform(BELL), Parity(BitVec.from_str("11"))) == 1


def test_parity_expectation_examples():
    assert parity_expectation(BELL, BitVec.zeros(2)) == 1
    assert parity_expectation(BELL, BitVec.from_str("11")) == 1
    A = AffineSubspace.from_strings(["01"], "10")
    assert parity_expectation(A, BitVec.from_str("10")) == -1


@given(affine(max_n=10), st.data())
def test_parity_expectation_brute_force(A, data):
    s = BitVec(A.n, data.draw(st.integers(0, (1 << A.n) - 1)))
    P = AffineUniform(A)
    brute = np.mean([1 - 2 * (s.dot(x)) for x in A.elements()])
    assert parity_expectation(A, s) == brute == expectation(P, Parity(s))
    assert parity_expectation_via_complement(A, s) == brute


def queries(n):
    return st.one_of(
        st.builds(lambda v: Parity(BitVec(n, v)), st.integers(0, (1 << n) - 1)),
        st.builds(
            lambda v, bw: KernelSection(BitVec(n, v), GaussianKernel(tuple(bw))),
            st.integers(0, (1 << n) - 1),
            st.lists(st.floats(0.05, 10), min_size=1, max_size=3),
        ),
        st.builds(lambda c: Constant(c), st.floats(-1, 1)),
        st.builds(lambda k, sgn: Indicator(n, lambda x: x.weight() >= k, sgn), st.integers(0, n), st.booleans()),
        st.builds(lambda vals: Rescaled(Table(n, np.array(vals), (-3.0, 5.0))), st.lists(st.floats(-3, 5), min_size=1 << n, max_size=1 << n)),
    )


@given(st.data())
def test_queries_stay_in_codomain(data):
    n = data.draw(st.integers(1, 6))
    phi = data.draw(queries(n))
    a, b = phi.codomain
    vals = phi.evaluate_ints(np.arange(1 << n))
    assert np.all(vals >= a) and np.all(vals <= b)
    x = BitVec(n, data.draw(st.integers(0, (1 << n) - 1)))
    assert phi(x) == vals[x.bits]


@given(affine(max_n=6), st.data())
def test_expectation_matches_brute_force(A, data):
    phi = data.draw(queries(A.n))
    P = AffineUniform(A)
    assert expectation(P, phi) == pytest.approx(brute_expectation(P, phi), abs=1e-12)


def test_kernel_self_similarity():
    k = GaussianKernel((1.5,))
    x = BitVec.from_str("1011")
    assert k(x, x) == 1.0
    assert KernelSection(x, k)(x) == 1.0
    with pytest.raises(ValueError):
        GaussianKernel(())


def test_table_rejects_out_of_codomain():
    with pytest.raises(ValueError):
        Table(1, np.array([0.0, 2.0]))


@pytest.mark.parametrize("seed", range(3))
def test_sample_ints_law(seed):
    from scipy.stats import chisquare

    rng = np.random.default_rng(seed)
    A = AffineSubspace.from_strings(["1100", "0011"], "1000")
    xs = AffineUniform(A).sample_ints(rng, 8000)
    members = sorted(x.bits for x in A.elements())
    assert set(xs.tolist()) == set(members)
    assert chisquare([int((xs == v).sum()) for v in members]).pvalue > 1e-3
