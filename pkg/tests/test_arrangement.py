from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zlab import corpus
from zlab.arrangement import (
    Arrangement,
    TuttePoly,
    beta,
    dual_tutte,
    elements_of,
    parse_arrangement,
    tutte,
    tutte_corank_nullity,
)
from zlab.errors import ContractLoop, GroundSetTooLarge, NotEssential, ParseError
from zlab.linalg import RatMatrix, rank

from conftest import arrangements


def members(F):
    return {e + 1 for e in F.elements()}


def oracle_flats(arr):
    """Flats straight from the definition: sets that no outside column is spanned by."""
    out = set()
    for size in range(arr.n + 1):
        for s in combinations(range(arr.n), size):
            rk = rank(arr.matrix.select_columns(s))
            if all(rank(arr.matrix.select_columns(s + (j,))) > rk for j in range(arr.n) if j not in s):
                out.add(frozenset(s))
    return out


def test_flats_u23(u23):
    assert [members(F) for F in u23.flats()] == [set(), {1}, {2}, {3}, {1, 2, 3}]
    assert u23.closure([0]).rk == 1 and members(u23.closure([0])) == {1}


def test_flats_mk4(mk4):
    assert [members(F) for F in mk4.flats()] == [set(), {1, 2}, {3, 4}, {5}, {1, 2, 3, 4, 5}]


def test_boolean_2_flats():
    assert len(corpus.boolean(2).flats()) == 4


def test_loop_in_closure_of_empty():
    arr = Arrangement.from_rows([[1, 0, 0], [0, 1, 0]])
    assert members(arr.closure([])) == {3}
    assert members(arr.closure(range(3))) == {1, 2, 3}


def test_cocircuits():
    cvs = corpus.load("u23").cocircuit_vectors()
    assert len(cvs) == 3 and all(c.rho == 2 for c in cvs)
    cvs = corpus.boolean(3).cocircuit_vectors()
    assert sorted(c.v for c in cvs) == sorted(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))
    assert all(c.rho == 1 for c in cvs)
    cvs = corpus.load("mk4").cocircuit_vectors()
    assert [(members(c.flat), c.rho) for c in cvs] == [({1, 2}, 3), ({3, 4}, 3), ({5}, 4)]


def test_minors():
    assert corpus.boolean(2).deletion(1).matrix == corpus.boolean(1).matrix
    mk4 = corpus.load("mk4")
    con = mk4.contraction(4)
    assert (con.r, con.n) == (1, 4) and not con.loops()
    assert con.rank_of(con.ground) == 1 and all(con.rank_of(3 << i) == 1 for i in range(3))
    dele = mk4.deletion(4)
    assert dele.r == 2 and tutte(dele) == TuttePoly.from_dict({(2, 0): 1, (1, 1): 2, (0, 2): 1})
    # deleting a coloop drops the dimension
    assert corpus.load("mk4").restriction_to([0, 1]).r == 1
    with pytest.raises(ContractLoop):
        Arrangement.from_rows([[1, 0]]).contraction(1)


def test_truncation_examples():
    TL, f, K = corpus.load("u23").truncation(0)
    assert (TL.r, TL.n) == (1, 3) and not TL.loops()
    TL, _, _ = corpus.boolean(2).truncation(1)
    assert (TL.r, TL.n) == (1, 2) and not TL.loops()
    T2, _, _ = corpus.load("u34").truncation(2)[0].truncation(3)
    assert (T2.r, T2.n) == (1, 4) and not T2.loops()


def test_tutte_examples():
    assert tutte(corpus.boolean(3)).as_dict() == {(3, 0): 1}
    assert tutte(corpus.load("u23")).as_dict() == {(2, 0): 1, (1, 0): 1, (0, 1): 1}
    assert tutte(Arrangement(RatMatrix(0, 1, ()))).as_dict() == {(0, 1): 1}
    assert tutte(corpus.load("u24")).as_dict() == {(2, 0): 1, (1, 0): 2, (0, 1): 2, (0, 2): 1}


def test_beta_and_dual():
    assert beta(corpus.load("u23")) == 1
    assert beta(corpus.boolean(2)) == 0
    assert beta(Arrangement.from_rows([[1, 1, 0]])) == 0
    assert dual_tutte(corpus.load("u23")).as_dict() == {(0, 2): 1, (0, 1): 1, (1, 0): 1}


def test_not_essential():
    with pytest.raises(NotEssential):
        Arrangement.from_rows([[1, 1], [2, 2]])


def test_enumeration_cap():
    arr = Arrangement.from_rows([[1] * 17])
    with pytest.raises(GroundSetTooLarge):
        arr.flats()


def test_parse_text_and_json():
    text = "# U(2,3)\n2 3\n1 0 1\n0 1 1/1\n"
    arr = parse_arrangement(text)
    assert arr.matrix == corpus.load("u23").matrix
    assert parse_arrangement(arr.to_text()).matrix == arr.matrix
    import json
    assert parse_arrangement(json.dumps(arr.to_json())).matrix == arr.matrix


@pytest.mark.parametrize("text,line", [
    ("2 3\n1 0 1\n0 1\n", 3),
    ("2\n1 0\n", 1),
    ("1 2\n1 x\n", 2),
    ("2 2\n1 0\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_arrangement(text)
    assert exc.value.line == line and f"line {line}" in str(exc.value)


@given(arrangements())
def test_flats_match_definition(arr):
    assert {frozenset(F.elements()) for F in arr.flats()} == oracle_flats(arr)
    for F in arr.flats():
        assert F.rk == arr.r - len(F.subspace_basis)
        for v in F.subspace_basis:
            for i in F.elements():
                assert sum(a * b for a, b in zip(arr.column(i), v)) == 0


@given(arrangements(), st.data())
def test_closure_axioms(arr, data):
    a = data.draw(st.integers(0, arr.ground))
    b = data.draw(st.integers(0, arr.ground)) | a
    ca, cb = arr.closure_mask(a), arr.closure_mask(b)
    assert ca & a == a
    assert arr.closure_mask(ca) == ca
    assert ca & cb == ca


@given(arrangements())
def test_tutte_two_ways_and_bases(arr):
    T = tutte(arr)
    bases = sum(1 for s in combinations(range(arr.n), arr.r)
                if rank(arr.matrix.select_columns(s)) == arr.r)
    assert T.evaluate(1, 1) == bases
    assert all(c > 0 for _, c in T.coeffs)


@given(arrangements())
def test_tutte_deletion_contraction_identity(arr):
    T = tutte(arr).as_dict()
    for i in range(arr.n):
        if arr.is_loop(i) or arr.is_coloop(i):
            continue
        a, b = tutte(arr.contraction(i)).as_dict(), tutte(arr.deletion(i)).as_dict()
        keys = set(T) | set(a) | set(b)
        assert all(T.get(k, 0) == a.get(k, 0) + b.get(k, 0) for k in keys)


@given(arrangements())
def test_cocircuit_rho_two_ways(arr):
    for cv in arr.cocircuit_vectors():
        assert cv.rho == sum(1 for i in range(arr.n) if sum(a * b for a, b in zip(arr.column(i), cv.v)) != 0)


@given(arrangements(), st.integers(0, 100))
def test_truncation_certificate(arr, seed):
    TL, f, K = arr.truncation(seed)
    assert TL.r == arr.r - 1
    for A in range(1 << arr.n):
        assert TL.rank_of(A) == min(arr.rank_of(A), arr.r - 1)


def test_uniform_tutte_closed_form():
    # uniform matroid rank function written down directly
    u24 = corpus.load("u24")
    rk = lambda A: min(len(elements_of(A)), 2)
    assert tutte_corank_nullity(rk, 4, 2) == tutte(u24)
