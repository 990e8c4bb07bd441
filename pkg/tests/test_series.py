import pytest
from hypothesis import given
from hypothesis import strategies as st

from zlab.series import BigradedTable, LaurentSeries, Q, Q_INV, binomial_series

series = st.builds(
    LaurentSeries.from_coeffs,
    st.lists(st.integers(-5, 5), max_size=5),
    st.integers(-3, 3),
)


def test_basics():
    s = 1 + 2 * Q
    assert s.as_polynomial() == [1, 2]
    assert str(s - Q * Q) == "1 + 2*q - q^2"
    assert (Q * Q_INV) == LaurentSeries.constant(1)
    assert LaurentSeries.from_coeffs([0, 0, 3, 0]).to_json() == {"min_deg": 2, "coeffs": [3]}
    assert str(LaurentSeries()) == "0" and LaurentSeries().as_polynomial() == []
    assert binomial_series(3).as_polynomial() == [1, 3, 3, 1]
    with pytest.raises(ValueError):
        Q_INV.as_polynomial()


@given(series, series, series)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentSeries()


@given(series, st.integers(-4, 4))
def test_shift_is_multiplication_by_q_power(a, k):
    mono = LaurentSeries.monomial(k)
    assert a.shift(k) == a * mono


def test_bigraded_table():
    t = BigradedTable(2, {(0, 0): 1, (1, 0): 2, (0, 1): 2, (1, 1): 1, (0, 2): 1, (3, 1): 0})
    assert t.total() == 7 and t[3, 1] == 0
    assert t.row(0) == [1, 2] and t.row(2) == [1]
    assert t.euler_sums() == {0: 1, 1: 0, 2: 0}
    assert t.to_json()["entries"][0] == {"i": 0, "j": 0, "dim": 1}
    assert "j\\i" in t.render()
    with pytest.raises(ValueError):
        BigradedTable(1, {(0, 2): 1})
