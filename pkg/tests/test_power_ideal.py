import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zlab import corpus
from zlab.errors import CapExceeded, NotAPolymatroid, ParseError
from zlab.linalg import RatMatrix, rank
from zlab.power_ideal import (
    ExponentMap,
    PowerIdeal,
    cardinality_polymatroid,
    check_polymatroid,
    dual_rank_polymatroid,
    effective_exponent,
    hilbert_quotient,
    ideal_graded_dim,
    inverse_system_basis,
    polymatroid_span_check,
    rank_polymatroid,
)
from zlab.superspace import SuperElement, commutative_monomials, odot, slice_basis
from zlab.zonotopal import zonotopal_exponent_map

from conftest import arrangements


def oracle_ideal_dim(arr, a, d, seed=0):
    """dim I_d from random powers v^(a_F+1), v in L_F, times all monomials."""
    rng = random.Random(seed)
    basis = slice_basis(arr.r, d, 0)
    rows = []
    for F in arr.proper_flats():
        e = a.as_dict()[F.members] + 1
        if e <= 0:
            return len(basis)
        if e > d or not F.subspace_basis:
            continue
        need = len(commutative_monomials(len(F.subspace_basis), e)) + 2
        for _ in range(need):
            coeffs = [rng.randint(-9, 9) for _ in F.subspace_basis]
            v = [sum(c * u[t] for c, u in zip(coeffs, F.subspace_basis)) for t in range(arr.r)]
            p = SuperElement.linear(v) ** e
            for alpha in commutative_monomials(arr.r, d - e):
                vec = basis.vector(SuperElement.monomial(alpha) * p)
                rows.append([vec.get(i, Fraction(0)) for i in range(len(basis))])
    if not rows:
        return 0
    return rank(RatMatrix.from_rows(rows, len(basis)))


def zmap(name, k):
    arr = corpus.load(name)
    return arr, zonotopal_exponent_map(arr, k)


def test_effective_exponent():
    arr = corpus.load("mk4")
    a = ExponentMap.from_function(arr, lambda F: 3)
    assert all(effective_exponent(arr, a, F) == 3 for F in arr.proper_flats())
    a = ExponentMap.from_function(arr, lambda F: -1 if F.rk == 0 else 2)
    assert all(effective_exponent(arr, a, F) < 0 for F in arr.proper_flats())
    assert PowerIdeal(arr, a).hilbert().dims == []


def test_graded_dim_examples():
    arr, a = zmap("boolean_2", 0)
    assert ideal_graded_dim(arr, a, 2) == 2
    assert hilbert_quotient(arr, a).dims == [1, 2, 1]
    arr, a = zmap("u23", -1)
    assert ideal_graded_dim(arr, a, 1) == 0
    assert ideal_graded_dim(arr, a, 2) == 3


def test_hilbert_examples():
    assert hilbert_quotient(*zmap("u23", -1)).dims == [1, 2]
    assert hilbert_quotient(*zmap("u24", -1)).dims == [1, 2, 3]
    assert hilbert_quotient(*zmap("mk4", -3)).dims == [1]


def test_inverse_system_examples():
    arr, a = zmap("u23", -1)
    assert inverse_system_basis(arr, a, 0).elements == [SuperElement.one(2)]
    assert len(inverse_system_basis(arr, a, 1).elements) == 2
    arr, a = zmap("boolean_2", 0)
    (g,) = inverse_system_basis(arr, a, 2).elements
    assert set(g.terms) == {((1, 1), 0)}


def test_cap_override(monkeypatch):
    arr, a = zmap("u24", -1)
    monkeypatch.setenv("ZLAB_MAX_DEGREE", "1")
    with pytest.raises(CapExceeded):
        PowerIdeal(arr, a).hilbert()
    monkeypatch.setenv("ZLAB_MAX_DEGREE", "3")
    assert PowerIdeal(arr, a).hilbert().dims == [1, 2, 3]


def test_exponent_map_json_round_trip():
    arr, a = zmap("mk4", -1)
    import json
    assert ExponentMap.from_json(arr, json.dumps(a.to_json())) == a
    with pytest.raises(ParseError):
        ExponentMap.from_json(arr, '{"flats": [{"members": [1, 2], "a": 1}]}')
    with pytest.raises(ParseError):
        ExponentMap.from_json(arr, "not json")


@st.composite
def arrangement_and_map(draw):
    arr = draw(arrangements())
    vals = {F.members: draw(st.integers(-1, 2)) for F in arr.proper_flats()}
    return arr, ExponentMap.from_dict(arr, vals)


@given(arrangement_and_map())
def test_graded_dims_match_oracle(t):
    arr, a = t
    ideal = PowerIdeal(arr, a)
    for d in range(4):
        assert ideal.graded_dim(d) == oracle_ideal_dim(arr, a, d)


@given(arrangement_and_map())
def test_hilbert_terminates_and_stays_zero(t):
    arr, a = t
    ideal = PowerIdeal(arr, a)
    hf = ideal.hilbert()
    top = len(hf.dims)
    assert all(x > 0 for x in hf.dims)
    # one and two degrees past termination, computed from scratch
    for d in (top, top + 1):
        assert oracle_ideal_dim(arr, a, d) == len(slice_basis(arr.r, d, 0))


@given(arrangement_and_map())
def test_ideal_is_monotone(t):
    arr, a = t
    ideal = PowerIdeal(arr, a)
    # multiplication by a variable is injective, so dims of I_d never drop
    for d in range(3):
        assert ideal.graded_dim(d + 1) >= ideal.graded_dim(d)


@given(arrangement_and_map())
def test_inverse_system_annihilated_and_translation_closed(t):
    arr, a = t
    ideal = PowerIdeal(arr, a)
    gens = ideal.all_generators()
    spaces = ideal.inverse_system()
    assert [len(s.elements) for s in spaces] == ideal.hilbert().dims
    for s in spaces:
        for g in s.elements:
            for h in gens:
                assert odot(h, g).is_zero()
        if s.degree == 0:
            continue
        prev = spaces[s.degree - 1].elements
        basis = slice_basis(arr.r, s.degree - 1, 0)
        for g in s.elements:
            for j in range(arr.r):
                dg = g.partial(j)
                rows = [basis.vector(x) for x in prev]
                m = RatMatrix.from_rows([[v.get(i, Fraction(0)) for i in range(len(basis))] for v in rows],
                                        len(basis))
                ext = RatMatrix.from_rows(
                    m.to_rows() + [[basis.vector(dg).get(i, Fraction(0)) for i in range(len(basis))]],
                    len(basis))
                assert rank(ext) == rank(m)


@given(arrangements())
def test_cocircuit_mode_agrees_for_zonotopal_maps(arr):
    for k in (0, -1, -2):
        a = zonotopal_exponent_map(arr, k)
        assert PowerIdeal(arr, a).hilbert() == PowerIdeal(arr, a, "cocircuit").hilbert()


def test_polymatroid_examples():
    arr = corpus.load("boolean_2")
    zero = {s: 0 for s in range(4)}
    rep = polymatroid_span_check(arr, zero)
    assert rep.quotient.dims == [1] and rep.span_dims == [1]
    rep = polymatroid_span_check(arr, cardinality_polymatroid(2))
    assert rep.quotient.dims == [1, 2, 1] and rep.match and rep.contained
    u23 = corpus.load("u23")
    for f in (dual_rank_polymatroid(u23), rank_polymatroid(u23, 2)):
        rep = polymatroid_span_check(u23, f)
        assert rep.match and rep.contained
    assert polymatroid_span_check(u23, dual_rank_polymatroid(u23)).quotient.total() == 3


def test_not_a_polymatroid():
    with pytest.raises(NotAPolymatroid):
        check_polymatroid(2, {0: 0, 1: 2, 2: 1, 3: 1})
    with pytest.raises(NotAPolymatroid):
        check_polymatroid(2, {0: 0, 1: 1, 2: 1, 3: 3})
    with pytest.raises(NotAPolymatroid):
        check_polymatroid(1, {0: 1, 1: 1})
