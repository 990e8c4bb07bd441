from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from zlab import corpus
from zlab.arrangement import Arrangement
from zlab.linalg import RatMatrix, rank

settings.register_profile("zlab", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("zlab")


@pytest.fixture(params=corpus.names())
def corpus_arr(request):
    return request.param, corpus.load(request.param)


@pytest.fixture
def u23():
    return corpus.load("u23")


@pytest.fixture
def mk4():
    return corpus.load("mk4")


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=4, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(rationals) for _ in range(c)] for _ in range(r)]
    return RatMatrix(r, c, tuple(Fraction(x) for row in rows for x in row))


@st.composite
def arrangements(draw, max_r=3, max_n=5):
    """Small essential arrangements with entries in -2..2."""
    r = draw(st.integers(1, max_r))
    n = draw(st.integers(r, max_n))
    rows = [[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(r)]
    m = RatMatrix.from_rows(rows, n)
    assume(rank(m) == r)
    return Arrangement(m)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import OUTCOMES
    except ImportError:
        return
    if OUTCOMES:
        terminalreporter.section("acceptance criteria")
        for c in sorted(OUTCOMES):
            terminalreporter.write_line(OUTCOMES[c])
