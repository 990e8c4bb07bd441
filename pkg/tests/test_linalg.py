from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zlab.errors import DenominatorDivisibleByPrime
from zlab.linalg import (
    Echelon,
    RatMatrix,
    kernel_basis,
    primitive,
    rank,
    rank_modular_probe,
    rref,
)

from conftest import matrices, rationals

PRIME = 2_147_483_647


def naive_rank(m: RatMatrix) -> int:
    """Textbook elimination over Fractions, kept separate from the library code."""
    a = [list(r) for r in m.to_rows()]
    rk = 0
    for c in range(m.cols):
        piv = None
        for i in range(rk, len(a)):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(len(a)):
            if i != rk and a[i][c] != 0:
                f = a[i][c] / a[rk][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


def test_rank_examples():
    assert rank(RatMatrix.identity(2)) == 2
    assert rank(RatMatrix.zeros(3, 4)) == 0
    assert rank(RatMatrix.from_rows([[1, 1, 0, 0, 1], [0, 0, 1, 1, 1]])) == 2


def test_kernel_examples():
    assert kernel_basis(RatMatrix.identity(2)) == []
    (v,) = kernel_basis(RatMatrix.from_rows([[1, 0]]))
    assert v == [0, 1]
    (v,) = kernel_basis(RatMatrix.from_rows([[1, 0], [1, 0]]))
    assert v == [0, 1]


def test_rational_entries():
    m = RatMatrix.from_rows([["1/2", "1/3"], ["3/2", 1]])
    assert rank(m) == 1
    assert m[0, 1] == Fraction(1, 3)


def test_primitive():
    assert primitive([Fraction(-2, 3), Fraction(4, 3)]) == [1, -2]
    assert primitive([0, 0]) == [0, 0]


@given(matrices())
def test_rank_matches_naive_and_transpose(m):
    assert rank(m) == naive_rank(m) == rank(m.transpose())


@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    if ker:
        assert rank(RatMatrix.from_rows(ker, m.cols)) == len(ker)


@given(matrices(), st.integers(0, 5))
def test_modular_probe_is_lower_bound(m, seed):
    assert rank_modular_probe(m, PRIME, seed) <= rank(m)


def test_modular_probe_examples():
    assert rank_modular_probe(RatMatrix.identity(2), PRIME) == 2
    assert rank_modular_probe(RatMatrix.zeros(2, 3), PRIME) == 0
    with pytest.raises(ValueError):
        rank_modular_probe(RatMatrix.identity(2), 7)
    bad = RatMatrix.from_rows([[Fraction(1, PRIME)]])
    with pytest.raises(DenominatorDivisibleByPrime):
        rank_modular_probe(bad, PRIME)


@given(rationals, rationals)
def test_fraction_round_trip(a, b):
    assert (a + b) - b == a
    if b:
        assert (a * b) / b == a


@given(matrices())
def test_echelon_agrees_with_rank(m):
    ech = Echelon(m.cols)
    for row in m.to_rows():
        ech.add(dict(enumerate(row)))
    assert ech.rank == rank(m)
    rows, pivots = rref(m)
    assert len(pivots) == ech.rank


@given(matrices(max_rows=3, max_cols=4))
def test_complement_kernel_is_orthogonal(m):
    ech = Echelon(m.cols)
    for row in m.to_rows():
        ech.add(dict(enumerate(row)))
    weights = [Fraction(i + 1) for i in range(m.cols)]
    comp = ech.complement_kernel(weights)
    assert len(comp) == m.cols - ech.rank
    for g in comp:
        for row in m.to_rows():
            assert sum(row[c] * weights[c] * g[c] for c in range(m.cols)) == 0
