"""Named reproduction checks, each returning a :class:`CheckResult`.

Randomised checks draw from ``random.Random(seed)`` so a given seed always
produces the same report.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import Callable

from . import instances as inst
from . import models
from .core import VPoly
from .ef import (RelationTag, check_augmentation, check_ef, classify_relationship,
                 construct_mutual_augmentation, independent_spaces,
                 overlap_augmentation_invariance)
from .lp import LinProgram, check_farkas, solve
from .polyhedron import enumerate_vertices, enumerate_vertices_bruteforce, poly_equal
from .projection import Kind, project, project_degenerate_case, pushforward_objective
from .rational import ZERO, format_rational
from .redundancy import column_redundant


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)


def _pt(v) -> str:
    return "(" + ",".join(format_rational(x) for x in v) + ")"


def _pts(vs) -> str:
    return "{" + ", ".join(_pt(v) for v in sorted(vs)) + "}"


def independent_pair(rng: random.Random) -> CheckResult:
    p, q = inst.indep_p(), inst.indep_q()
    vp = enumerate_vertices(p).vertices
    vq = enumerate_vertices(q).vertices
    proj_y = project(inst.indep_p_lifted(), "y")
    proj_x = project(inst.indep_q_lifted(), "x")
    verdict = check_ef(p, q, witness=inst.collapse_map())
    rel = classify_relationship(p, q, [inst.collapse_map()])
    d = {
        "vertices.P": _pts(vp),
        "vertices.Q": _pts(vq),
        "project.P_lifted.y": str(proj_y),
        "project.Q_lifted.x": str(proj_x),
        "def1": verdict.def1,
        "def2": verdict.def2_holds,
        "def3": verdict.def3,
        "classify": rel.tag.value,
    }
    ok = (set(vp) == {(F(6), F(0))}
          and set(vq) == {(F(3, 2), F(9, 2)), (F(6), F(0))}
          and proj_y.is_full_space and proj_y.dim == 2
          and proj_x.is_full_space and proj_x.dim == 2
          and verdict.def2_holds and verdict.def1 is False and verdict.def3 is False
          and rel.tag is RelationTag.ILL_DEFINED)
    return CheckResult("independent-pair", ok, d)


def mutual_augmentation_example(rng: random.Random) -> CheckResult:
    p1, p2 = inst.pair_p1(), inst.pair_p2()
    w = construct_mutual_augmentation(p1, p2, inst.pair_spec())
    back1 = project(w, "x").as_hpoly(p1.space)
    back2 = project(w, "w").as_hpoly(p2.space)
    ok1, ok2 = poly_equal(back1, p1), poly_equal(back2, p2)
    return CheckResult("mutual-augmentation-example", ok1 and ok2,
                       {"W.rows": w.nrows, "W.dim": w.dim, "project.x": ok1, "project.w": ok2})


def linked_family(rng: random.Random, count: int = 20) -> CheckResult:
    good = 0
    for _ in range(count):
        f = inst.random_linked_family(rng, rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 2))
        claims = [
            check_augmentation(f.x, f.k1), not check_augmentation(f.link, f.k1),
            not check_augmentation(f.y, f.k1),
            check_augmentation(f.y, f.k2), not check_augmentation(f.link, f.k2),
            not check_augmentation(f.x, f.k2),
            check_augmentation(f.x, f.k3), check_augmentation(f.y, f.k3),
            not check_augmentation(f.link, f.k3),
            not check_augmentation(f.x, f.link), not check_augmentation(f.y, f.link),
        ]
        good += all(claims)
    return CheckResult("linked-family", good == count, {"instances": count, "passed": good})


def overlap_invariance(rng: random.Random, count: int = 100) -> CheckResult:
    good = ef = 0
    for i in range(count):
        p1, p2, p3 = inst.random_overlap_triple(rng, make_ef=(i % 2 == 0))
        ef += bool(check_ef(p1, p2, 1).def1)
        good += overlap_augmentation_invariance(p1, p2, p3)
    return CheckResult("overlap-invariance", good == count,
                       {"instances": count, "passed": good, "pairs_with_ef": ef})


def independent_projection(rng: random.Random, count: int = 50) -> CheckResult:
    good = 0
    for _ in range(count):
        p, q = inst.random_independent_pair(rng)
        v = check_ef(p, q)
        good += (v.projection.kind is Kind.FULL_SPACE and v.def1 is False and v.def3 is False)
    return CheckResult("independent-projection", good == count, {"instances": count, "passed": good})


def mutual_augmentation_random(rng: random.Random, count: int = 100) -> CheckResult:
    good = 0
    for _ in range(count):
        p, q = inst.random_independent_pair(rng)
        try:
            construct_mutual_augmentation(p, q, inst.random_aug_spec(rng, p, q))
            good += 1
        except RuntimeError:
            pass
    return CheckResult("mutual-augmentation-random", good == count,
                       {"instances": count, "passed": good})


def spanning_tree(rng: random.Random, sizes=(3,), lp_trials: int = 10) -> CheckResult:
    d: dict = {}
    ok = True
    for n in sizes:
        p, _ = models.gen_mst_edmonds(n)
        verts = enumerate_vertices(p).vertices
        trees = {models.tree_vector(n, t) for t in models.spanning_trees(n)}
        integral = all(x.denominator == 1 for v in verts for x in v)
        d[f"n{n}.edmonds_vertices"] = len(verts)
        d[f"n{n}.cayley"] = n ** (n - 2)
        ok &= set(verts) == trees and len(verts) == n ** (n - 2) and integral
        q = models.gen_mst_martin(n)
        proj = project(q, "x").as_hpoly(p.space)
        same = poly_equal(proj, p)
        d[f"n{n}.project_martin_eq_edmonds"] = same
        ok &= same
        cr = column_redundant(q, "x")
        subst = cr is not None and _matches_substitution(n, cr)
        d[f"n{n}.x_column_redundant_by_substitution"] = subst
        ok &= subst
        qr, _ = models.gen_mst_martin_reduced(n)
        indep = independent_spaces(p, qr)
        d[f"n{n}.independent_P_Qreduced"] = indep
        ok &= indep
        agree = 0
        for _ in range(lp_trials):
            cost = tuple(inst.rand_rat(rng, -5, 9) for _ in models.edges(n))
            full = solve(LinProgram(cost + (ZERO,) * (q.dim - len(cost)), q))
            red = solve(models.gen_mst_martin_reduced(n, cost)[1])
            agree += full.optimal and red.optimal and full.optimum == red.optimum
        d[f"n{n}.lp_agreement"] = f"{agree}/{lp_trials}"
        ok &= agree == lp_trials
    return CheckResult("spanning-tree", ok, d)


def _matches_substitution(n: int, cr) -> bool:
    """The recovered map agrees with ``x_e = z[r_e,i,j] + z[r_e,j,i]`` on every
    vertex of the reduced polytope (equivalently, as affine maps on it)."""
    sub = models.martin_substitution(n)
    dom = cr.reconstruction.domain
    for v in enumerate_vertices(cr.reduced).vertices:
        x = cr.reconstruction(v)
        for e, xe in zip(models.edges(n), x):
            a, b = sub[e]
            if xe != v[dom.position(("z", a))] + v[dom.position(("z", b))]:
                return False
    return True


def tsp(rng: random.Random, sizes=(3, 4, 5)) -> CheckResult:
    d: dict = {}
    ok = True
    for n in sizes:
        ap = models.gen_alternate_tsp(n)
        verts = enumerate_vertices(ap).vertices
        binary = all(x in (0, 1) for v in verts for x in v)
        round_trip = all(
            models.tour_to_assignment(models.assignment_to_tour(
                models.AssignmentVector.from_vector(n, v))).vector() == v
            for v in verts)
        tours = models.all_tours(n)
        tour_trip = all(models.assignment_to_tour(models.tour_to_assignment(t)) == t
                        for t in tours)
        std = models.gen_standard_tsp(n)
        k = math.factorial(n - 1)
        d[f"n{n}.assignment_vertices"] = len(verts)
        d[f"n{n}.standard_vertices"] = len(std.vertices)
        ok &= len(verts) == k and binary and round_trip and tour_trip and len(std.vertices) == k
    return CheckResult("tsp", ok, d)


def affine_image_lp(rng: random.Random, count: int = 20) -> CheckResult:
    good = 0
    for _ in range(count):
        ins = inst.random_image_instance(rng)
        joint = ins.joint()
        obj = tuple(ins.alpha) + (ZERO,) * len(ins.cmap.domain)
        big = solve(LinProgram(obj, joint))
        coeffs, const = pushforward_objective(ins.alpha, ins.cmap)
        small = solve(LinProgram(coeffs, ins.y))
        good += big.optimal and small.optimal and big.optimum == small.optimum + const
    return CheckResult("affine-image-lp", good == count, {"instances": count, "passed": good})


def projection_oracle(rng: random.Random, count: int = 50) -> CheckResult:
    good = 0
    for _ in range(count):
        dim = rng.randint(2, 5)
        p = inst.random_bounded_hpoly(rng, dim, rng.randint(1, 3))
        keep = sorted(rng.sample(range(dim), rng.randint(1, dim - 1)))
        res = project(p, keep)
        verts = enumerate_vertices_bruteforce(p).vertices
        sub = p.space.subspace(keep)
        if res.is_empty:
            good += not verts
            continue
        shadow = VPoly(sub, tuple(tuple(v[k] for k in keep) for v in verts))
        good += bool(verts) and poly_equal(res.as_hpoly(sub), shadow)
    return CheckResult("projection-oracle", good == count, {"instances": count, "passed": good})


def degenerate_projection(rng: random.Random, count: int = 30) -> CheckResult:
    good = empties = 0
    for _ in range(count):
        u = inst.random_degenerate_system(rng)
        a, b = project_degenerate_case(u, "x"), project(u, "x")
        fine = a.kind is b.kind and a.kind in (Kind.FULL_SPACE, Kind.EMPTY)
        if a.is_empty:
            empties += 1
            fine = fine and check_farkas(u, a.witness)
        good += fine
    return CheckResult("degenerate-projection", good == count,
                       {"instances": count, "passed": good, "empty": empties})


CHECKS: dict[str, Callable[[random.Random], CheckResult]] = {
    "independent-pair": independent_pair,
    "mutual-augmentation-example": mutual_augmentation_example,
    "linked-family": linked_family,
    "overlap-invariance": overlap_invariance,
    "independent-projection": independent_projection,
    "mutual-augmentation-random": mutual_augmentation_random,
    "spanning-tree": spanning_tree,
    "tsp": tsp,
    "affine-image-lp": affine_image_lp,
    "projection-oracle": projection_oracle,
    "degenerate-projection": degenerate_projection,
}


def run(names=None, seed: int = 0) -> list[CheckResult]:
    """Run the selected checks, each with its own ``Random(seed)`` stream."""
    names = list(CHECKS) if names is None else names
    return [CHECKS[n](random.Random(f"{seed}:{n}")) for n in names]
