from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extform.core import HPoly, VarSpace, VPoly
from extform.polyhedron import (UnboundedError, affine_hull, contains, enumerate_vertices,
                                enumerate_vertices_bruteforce, generators, hull, in_convex_hull,
                                is_bounded, normalize_row, poly_equal)
from extform.lp import maximize
from extform.rational import dot
from extform import instances
from strategies import boxed_hpoly, small_int

X2 = VarSpace.of(("x", 2))
X3 = VarSpace.of(("x", 3))


def unit_square():
    return HPoly.from_rows(X2, [([1, 0], "<=", 1), ([0, 1], "<=", 1), ([-1, 0], "<=", 0),
                                ([0, -1], "<=", 0)])


def test_single_point_polytope():
    assert enumerate_vertices(instances.indep_p()).vertices == ((6, 0),)


def test_segment_with_equality():
    v = enumerate_vertices(instances.indep_q()).vertices
    assert set(v) == {(F(3, 2), F(9, 2)), (6, 0)}


def test_empty_polytope_has_no_vertices():
    p = HPoly.from_rows(X2, [([1, 0], "<=", -1), ([-1, 0], "<=", 0)])
    assert enumerate_vertices(p).vertices == ()
    assert is_bounded(p) == (True, None)


def test_unbounded_raises_with_ray():
    p = HPoly.from_rows(X3, [([-1, 0, 0], "<=", 0), ([1, 0, 0], "<=", 1), ([0, 0, 1], "<=", 1),
                             ([0, 0, -1], "<=", 1), ([0, -1, 0], "<=", 0)])
    bounded, ray = is_bounded(p)
    assert not bounded and ray[1] > 0 and ray[0] == ray[2] == 0
    with pytest.raises(UnboundedError):
        enumerate_vertices(p)


def test_zero_row_is_unbounded():
    p = HPoly.from_rows(VarSpace.of(("x", 2)), [([0, 0], "<=", 0)])
    assert not is_bounded(p)[0]


@given(boxed_hpoly(max_dim=3))
def test_double_description_matches_brute_force(p):
    assert enumerate_vertices(p).vertices == enumerate_vertices_bruteforce(p).vertices


@given(boxed_hpoly(max_dim=3))
def test_vertices_to_hull_round_trip(p):
    v = enumerate_vertices(p)
    if not v.vertices:
        return
    h = hull(v)
    assert poly_equal(h, p)
    assert enumerate_vertices(h).vertices == v.vertices


def test_hull_of_point_and_segment():
    point = hull(VPoly(X2, ((1, 2),)))
    assert enumerate_vertices(point).vertices == ((1, 2),)
    seg = hull(VPoly(X2, ((0, 0), (2, 2))))
    assert any(s == "=" for s in seg.senses)
    assert contains(seg, (1, 1)) and not contains(seg, (1, 0))


def test_affine_hull_finds_implicit_equalities():
    p = HPoly.from_rows(X2, [([1, 1], "<=", 1), ([-1, -1], "<=", -1), ([-1, 0], "<=", 0),
                             ([0, -1], "<=", 0)])
    x0, basis, implicit = affine_hull(p)
    assert len(basis) == 1
    assert set(implicit) >= {0, 1}


def test_normalize_row_coprime_and_positive_scale():
    assert normalize_row([F(1, 2), F(3, 2)], 1) == ((1, 3), 2)
    c, r = normalize_row([-2, 4], -6, equality=True)
    assert (c, r) in {((1, -2), 3), ((-1, 2), -3)}


def test_in_convex_hull():
    pts = [(0, 0), (2, 0), (0, 2)]
    assert in_convex_hull(pts, (F(1, 2), F(1, 2)))
    assert not in_convex_hull(pts, (2, 2))


def test_poly_equal_mixed_representations():
    sq = unit_square()
    v = VPoly(X2, ((0, 0), (1, 0), (0, 1), (1, 1)))
    assert poly_equal(sq, v) and poly_equal(v, sq)
    assert not poly_equal(sq, VPoly(X2, ((0, 0), (1, 0), (0, 1))))


def test_poly_equal_unbounded_uses_inclusion():
    a = HPoly.from_rows(X2, [([-1, 0], "<=", 0), ([0, -1], "<=", 0)])
    b = HPoly.from_rows(X2, [([-1, 0], "<=", 0), ([0, -1], "<=", 0), ([-1, -1], "<=", 0)])
    c = HPoly.from_rows(X2, [([-1, 0], "<=", 0)])
    assert poly_equal(a, b)
    assert not poly_equal(a, c)


def test_poly_equal_requires_same_variables():
    with pytest.raises(ValueError):
        poly_equal(unit_square(), HPoly.from_rows(VarSpace.of(("y", 2)), unit_square().rows()))


def test_contains_examples():
    p1 = instances.pair_p1()
    assert contains(p1, (3, 0)) and not contains(p1, (4, 0))
    with pytest.raises(ValueError):
        contains(p1, (1, 2, 3))


def test_unbounded_in_second_coordinate():
    bounded, ray = is_bounded(instances.pair_p2())
    assert not bounded
    assert ray[0] == 0 and ray[1] > 0 and ray[2] <= 0


def test_separate_points_not_equal():
    space = instances.joint_space()
    assert not poly_equal(instances.indep_p().embed(space), instances.indep_q().embed(space))


def test_hull_of_two_permutation_matrices():
    from extform import models
    ap = models.gen_alternate_tsp(3)
    v = enumerate_vertices(ap)
    assert len(v.vertices) == 2
    assert poly_equal(hull(v), ap)


@given(boxed_hpoly(max_dim=3))
def test_hull_rows_irredundant_and_vertices_contained(p):
    from extform.redundancy import redundancy_report
    v = enumerate_vertices(p)
    assert all(contains(p, x) for x in v.vertices)
    if v.vertices:
        assert not redundancy_report(hull(v), columns=False).redundant_rows


@given(boxed_hpoly(max_dim=3))
def test_generators_match_vertices_on_polytopes(p):
    points, rays = generators(p)
    assert rays == ()
    assert set(points) == set(enumerate_vertices_bruteforce(p).vertices)


def _drop_rows(p, keep_mask):
    return p.select_rows([i for i, k in enumerate(keep_mask) if k])


@given(boxed_hpoly(max_dim=3), st.lists(st.booleans(), min_size=8, max_size=8),
       st.lists(small_int, min_size=3, max_size=3))
def test_generators_reproduce_lp_optima(p, mask, obj):
    # removing rows may make p unbounded or non-pointed; the generator
    # description must still give the same LP value in every direction
    q = _drop_rows(p, (mask * 2)[:p.nrows])
    c = tuple(obj[:q.dim])
    points, rays = generators(q)
    out = maximize(q, c)
    if out.infeasible:
        assert points == ()
        return
    assert points and all(contains(q, x) for x in points)
    for r in rays:
        assert all(dot(row, r) <= 0 for row, s in zip(q.a, q.senses) if s == "<=")
        assert all(dot(row, r) == 0 for row, s in zip(q.a, q.senses) if s == "=")
    if out.unbounded:
        assert any(dot(c, r) > 0 for r in rays)
    else:
        assert all(dot(c, r) <= 0 for r in rays)
        assert max(dot(c, x) for x in points) == out.optimum
