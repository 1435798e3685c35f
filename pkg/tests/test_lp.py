from fractions import Fraction as F

from hypothesis import given, strategies as st

from extform.core import HPoly, VarSpace
from extform.lp import LinProgram, check_farkas, is_empty, maximize, solve
from extform.polyhedron import enumerate_vertices_bruteforce
from extform.rational import dot
from strategies import boxed_hpoly, small_int

X2 = VarSpace.of(("x", 2))


def test_minimum_at_corner():
    p = HPoly.from_rows(X2, [([1, 1], "<=", 4), ([-1, 0], "<=", 0), ([0, -1], "<=", 0)])
    out = solve(LinProgram((1, 0), p))
    assert out.optimal and out.optimum == 0
    assert out.point[0] == 0


def test_infeasible_has_witness():
    p = HPoly.from_rows(VarSpace.of(("x", 1)), [([1], "<=", -1), ([-1], "<=", 0)])
    out = solve(LinProgram((0,), p))
    assert out.infeasible
    assert check_farkas(p, out.dual)
    assert out.dual == (F(1), F(1))


def test_unbounded_has_ray():
    p = HPoly.from_rows(X2, [([-1, 0], "<=", 0), ([0, -1], "<=", 0)])
    out = solve(LinProgram((-1, 0), p))
    assert out.unbounded
    assert dot((-1, 0), out.ray) < 0
    assert all(dot(r, out.ray) <= 0 for r in p.a)


def test_equality_rows_and_duals():
    p = HPoly.from_rows(X2, [([1, 1], "=", 3), ([-1, 0], "<=", 0), ([0, -1], "<=", 0)])
    out = solve(LinProgram((2, 1), p))
    assert out.optimum == 3 and out.point == (0, 3)
    # strong duality with the multipliers in row order
    assert dot(out.dual, p.b) == out.optimum
    for k in range(2):
        assert sum(d * r[k] for d, r in zip(out.dual, p.a)) == (2, 1)[k]


@given(boxed_hpoly(), st.lists(small_int, min_size=3, max_size=3))
def test_optimum_matches_vertex_brute_force(p, c):
    c = tuple(c[:p.dim])
    out = solve(LinProgram(c, p))
    verts = enumerate_vertices_bruteforce(p).vertices
    if not verts:
        assert out.infeasible and check_farkas(p, out.dual)
        return
    assert out.optimal
    assert out.optimum == min(dot(c, v) for v in verts)
    assert all(dot(r, out.point) <= b for r, b in zip(p.a, p.b))


@given(boxed_hpoly())
def test_emptiness_certificates(p):
    empty, cert = is_empty(p)
    if empty:
        assert check_farkas(p, cert)
    else:
        assert all(dot(r, cert) <= b for r, b in zip(p.a, p.b))


def test_maximize_reports_maximum():
    p = HPoly.from_rows(X2, [([1, 0], "<=", 2), ([0, 1], "<=", 5), ([-1, 0], "<=", 0),
                             ([0, -1], "<=", 0)])
    assert maximize(p, (1, 1)).optimum == 7
