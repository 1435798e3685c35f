import math

import pytest

from extform import models
from extform.lp import solve
from extform.polyhedron import enumerate_vertices, poly_equal
from extform.projection import project
from extform.rational import dot


@pytest.mark.parametrize("n", [3, 4, 5])
def test_assignment_polytope_vertices_are_tours(n):
    verts = enumerate_vertices(models.gen_alternate_tsp(n)).vertices
    assert len(verts) == math.factorial(n - 1)
    tours = {models.tour_to_assignment(t).vector() for t in models.all_tours(n)}
    assert set(verts) == tours


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_standard_tsp_vertex_count(n):
    v = models.gen_standard_tsp(n)
    assert len(v.vertices) == math.factorial(n - 1)
    assert all(sum(x) == n for x in v.vertices)


def test_tour_validation():
    with pytest.raises(ValueError):
        models.TourVector(4, {(1, 2), (2, 1), (3, 4), (4, 3)})
    with pytest.raises(ValueError):
        models.TourVector(3, {(1, 2), (2, 3)})
    t = models.TourVector.from_order([1, 3, 2])
    assert t.order() == [1, 3, 2]


def test_assignment_validation():
    with pytest.raises(ValueError):
        models.AssignmentVector(3, ((1, 1), (0, 0)))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_tour_assignment_bijection(n):
    for t in models.all_tours(n):
        assert models.assignment_to_tour(models.tour_to_assignment(t)) == t


def test_generator_ranges():
    with pytest.raises(ValueError):
        models.gen_standard_tsp(7)
    with pytest.raises(ValueError):
        models.gen_mst_edmonds(2)
    with pytest.raises(ValueError):
        models.gen_mst_martin(6)


def test_spanning_tree_brute_force_counts():
    assert [len(models.spanning_trees(n)) for n in (3, 4, 5)] == [3, 16, 125]


@pytest.mark.parametrize("n", [3, 4])
def test_edmonds_vertices_are_spanning_trees(n):
    p, _ = models.gen_mst_edmonds(n)
    verts = set(enumerate_vertices(p).vertices)
    assert verts == {models.tree_vector(n, t) for t in models.spanning_trees(n)}


def test_martin_projects_onto_edmonds_n3():
    p, _ = models.gen_mst_edmonds(3)
    q = models.gen_mst_martin(3)
    assert poly_equal(project(q, "x").as_hpoly(p.space), p)


def test_martin_substitution_uses_smallest_free_vertex():
    assert models.root_of((1, 2), 4) == 3
    assert models.root_of((2, 3), 4) == 1
    sub = models.martin_substitution(3)
    assert sub[(1, 2)] == ((3, 1, 2), (3, 2, 1))


@pytest.mark.parametrize("n", [3, 4])
def test_reduced_model_optimum_is_minimum_tree(n):
    cost = [(-1) ** k * (k + 1) for k in range(len(models.edges(n)))]
    _, lp = models.gen_mst_martin_reduced(n, cost)
    best = min(dot(cost, models.tree_vector(n, t)) for t in models.spanning_trees(n))
    out = solve(lp)
    assert out.optimal and out.optimum == best


def test_tour_to_assignment_examples():
    a = models.tour_to_assignment(models.TourVector.from_order([1, 2, 3]))
    assert a.w == ((1, 0), (0, 1))
    b = models.tour_to_assignment(models.TourVector.from_order([1, 3, 2]))
    assert b.w == ((0, 1), (1, 0))


def test_model_sizes():
    p, lp = models.gen_mst_edmonds(3)
    assert p.dim == 3 and p.nrows == 1 + 3 + 3
    q = models.gen_mst_martin(3)
    assert q.space.classes == ("x", "z") and q.dim == 3 + 18
    ap = models.gen_alternate_tsp(4)
    assert sum(s == "=" for s in ap.senses) == 6 and ap.dim == 9
