from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from extform.rational import (format_rational, mat_vec, nullspace, parse_rational, rank, rref,
                              solve_linear)
from strategies import rationals


@pytest.mark.parametrize("text, value", [
    ("3", F(3)), ("-7", F(-7)), ("1/3", F(1, 3)), ("-9/6", F(-3, 2)), ("1.5", F(3, 2)),
])
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@given(rationals)
def test_format_round_trip(r):
    assert parse_rational(format_rational(r)) == r


def test_rref_rank_and_pivots():
    r, k, piv = rref([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert k == 2 == rank([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert piv == [0, 1]
    assert r[0] == (1, 0, 1)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_nullspace_vectors_are_annihilated(m):
    basis = nullspace(m, 3)
    assert len(basis) == 3 - rank(m, 3)
    for v in basis:
        assert all(x == 0 for x in mat_vec(m, v))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_linear_consistent_systems(m, x):
    b = mat_vec(m, x)
    sol = solve_linear(m, b, 3)
    assert sol is not None
    assert mat_vec(m, sol[0]) == b


def test_solve_linear_inconsistent():
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None


def test_solve_linear_length_mismatch():
    with pytest.raises(ValueError):
        solve_linear([[1, 1]], [1, 2])
