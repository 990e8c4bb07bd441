from hypothesis import given
from hypothesis import strategies as st

from zlab import corpus
from zlab.arrangement import Arrangement, tutte
from zlab.invariants import (
    beta_duality_check,
    brylawski_check,
    brylawski_sum,
    euler_char_LM,
    euler_consistency,
    hyperplane_shadow,
    projective_chi,
)
from zlab.linalg import RatMatrix
from zlab.series import LaurentSeries, Q, Q_INV
from zlab.zonotopal import zonotopal_hilbert

from conftest import arrangements


def test_brylawski_examples():
    u23 = corpus.load("u23")
    assert brylawski_sum(tutte(u23), 3, 2, 1) == 0
    assert all(brylawski_check(u23))
    assert all(brylawski_check(corpus.boolean(3)))
    assert all(brylawski_check(corpus.load("mk4")))


def test_beta_examples():
    rep = beta_duality_check(corpus.load("u23"))
    assert (rep.beta, rep.beta_dual) == (1, 1) and rep.passed
    rep = beta_duality_check(corpus.load("u24"))
    assert (rep.beta, rep.beta_dual) == (2, 2) and rep.passed
    assert beta_duality_check(corpus.boolean(2)).beta == 0


def test_projective_chi():
    assert projective_chi(0, 0) == LaurentSeries.constant(1)
    assert projective_chi(1, 2) == LaurentSeries.from_coeffs([1, 1, 1])
    assert projective_chi(2, 1) == LaurentSeries.from_coeffs([1, 2])
    assert projective_chi(1, -1) == LaurentSeries()
    assert projective_chi(1, -2) == -Q_INV
    assert projective_chi(2, -4) == LaurentSeries.from_dict({-2: 1, -3: 2})


def test_euler_examples():
    assert euler_char_LM(corpus.boolean(1), -3) == -Q_INV
    empty = Arrangement(RatMatrix(0, 0, ()))
    for k in (-3, 0, 2):
        assert euler_char_LM(empty, k) == LaurentSeries.constant(1)
    mk4 = corpus.load("mk4")
    assert euler_char_LM(mk4, -3) == LaurentSeries.constant(1)
    assert euler_char_LM(mk4, -3, [4, 3, 2, 1, 0]) == LaurentSeries.constant(1)
    u23 = corpus.load("u23")
    assert euler_char_LM(u23, -1) == 1 + 2 * Q
    assert euler_char_LM(u23, -2) == LaurentSeries.constant(1)
    assert euler_consistency(u23)


@given(arrangements())
def test_brylawski_and_beta(arr):
    assert all(brylawski_check(arr))
    if arr.n > 1:
        assert beta_duality_check(arr, with_super=arr.r <= 2).passed


@given(arrangements(), st.sampled_from([-1, -2]), st.permutations(range(5)))
def test_euler_matches_hilbert_in_any_order(arr, k, perm):
    order = [e for e in perm if e < arr.n]
    chi = euler_char_LM(arr, k, order)
    assert chi == zonotopal_hilbert(arr, k).series()
    assert chi == euler_char_LM(arr, k)


@given(arrangements(), st.integers(-6, 2), st.permutations(range(5)))
def test_euler_order_independent(arr, k, perm):
    order = [e for e in perm if e < arr.n]
    assert euler_char_LM(arr, k, order) == euler_char_LM(arr, k)


@given(st.integers(1, 6), st.integers(-10, 6))
def test_hyperplane_shadow(rho, m):
    assert hyperplane_shadow(rho, m)
