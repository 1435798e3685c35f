"""H- and V-representations, vertex enumeration, convex hulls and exact equality."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .core import EQ, LE, HPoly, VarSpace, VPoly
from .lp import LinProgram, maximize, solve, solve_system
from .rational import ONE, ZERO, dot, nullspace, rank, rref, solve_linear, vec

__all__ = [
    "VarSpace", "HPoly", "VPoly", "UnboundedError",
    "contains", "is_bounded", "enumerate_vertices", "enumerate_vertices_bruteforce",
    "hull", "poly_equal", "implicit_equalities", "affine_hull", "normalize_row",
    "in_convex_hull", "generators",
]


class UnboundedError(ValueError):
    """Raised when an operation needs a polytope but got an unbounded polyhedron."""

    def __init__(self, ray):
        super().__init__(f"polyhedron is unbounded along ray {tuple(map(str, ray))}")
        self.ray = ray


def normalize_row(coeffs: Sequence, rhs=ZERO, *, equality=False):
    """Scale ``coeffs . x <= rhs`` to coprime integers (sign kept; for equalities the
    leading nonzero coefficient is made positive)."""
    vals = list(coeffs) + [rhs]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return tuple(Fraction(0) for _ in coeffs), Fraction(0)
    if equality:
        lead = next((v for v in ints[:-1] if v), ints[-1])
        if lead < 0:
            g = -g
    return tuple(Fraction(v // g) for v in ints[:-1]), Fraction(ints[-1] // g)


def _check_dim(p: HPoly, x: Sequence):
    if len(x) != p.dim:
        raise ValueError(f"point has {len(x)} coordinates, polyhedron lives in dimension {p.dim}")


def contains(p: HPoly, x: Sequence) -> bool:
    x = vec(x)
    _check_dim(p, x)
    for r, s, rhs in p.rows():
        lhs = dot(r, x)
        if (s == EQ and lhs != rhs) or (s == LE and lhs > rhs):
            return False
    return True


def is_bounded(p: HPoly):
    """``(True, None)`` or ``(False, ray)`` with a nonzero recession direction.

    An empty polyhedron counts as bounded.
    """
    n = p.dim
    ale, ble, aeq, beq = p.split()
    if solve_system((ZERO,) * n, ale, ble, aeq, beq, n=n).infeasible:
        return True, None
    # recession cone {r : ale r <= 0, aeq r = 0} intersected with the unit box
    box = []
    for j in range(n):
        e = [ZERO] * n
        e[j] = ONE
        box.append(tuple(e))
        box.append(tuple(-v for v in e))
    cone_le = list(ale) + box
    cone_b = [ZERO] * len(ale) + [ONE] * len(box)
    for j in range(n):
        for sgn in (1, -1):
            c = [ZERO] * n
            c[j] = Fraction(-sgn)
            out = solve_system(c, cone_le, cone_b, aeq, [ZERO] * len(aeq), n=n)
            if out.optimal and out.optimum < 0:
                return False, out.point
    return True, None


def implicit_equalities(p: HPoly) -> list[int]:
    """Indices of ``<=`` rows that hold with equality on all of ``p`` (``p`` non-empty)."""
    ale_idx = [i for i, s in enumerate(p.senses) if s == LE]
    eq_rows = [p.a[i] for i, s in enumerate(p.senses) if s == EQ]
    eq_rhs = [p.b[i] for i, s in enumerate(p.senses) if s == EQ]
    found: list[int] = []
    cand = list(ale_idx)
    n = p.dim
    while cand:
        # maximize t subject to a_i x + t <= b_i on candidates, t <= 1
        a_le = [tuple(p.a[i]) + (ONE,) for i in cand] + [(ZERO,) * n + (ONE,)]
        b_le = [p.b[i] for i in cand] + [ONE]
        a_eq = [tuple(r) + (ZERO,) for r in eq_rows] + [tuple(p.a[i]) + (ZERO,) for i in found]
        b_eq = list(eq_rhs) + [p.b[i] for i in found]
        c = (ZERO,) * n + (-ONE,)
        out = solve_system(c, a_le, b_le, a_eq, b_eq, n=n + 1)
        if not out.optimal:
            raise ValueError("implicit_equalities needs a non-empty polyhedron")
        if -out.optimum > 0:
            break
        tight = [i for i, d in zip(cand, out.dual) if d != 0]
        found.extend(tight)
        cand = [i for i in cand if i not in set(tight)]
    return sorted(found)


def affine_hull(p: HPoly):
    """Parametrize the affine hull of non-empty ``p`` as ``x = x0 + N t``.

    Returns ``(x0, basis, implicit)`` where ``basis`` is the list of columns of ``N``.
    """
    implicit = implicit_equalities(p)
    eq_idx = [i for i, s in enumerate(p.senses) if s == EQ] + implicit
    sol = solve_linear([p.a[i] for i in eq_idx], [p.b[i] for i in eq_idx], p.dim)
    if sol is None:
        raise ValueError("inconsistent equality system")
    x0, basis = sol
    return x0, basis, implicit


def _integral(v):
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _double_description(rows: list[tuple]) -> list[tuple]:
    """Extreme rays of the pointed cone ``{y : row . y <= 0 for row in rows}``.

    Rays are integer tuples.  The cone must be pointed (rows of full column rank).
    """
    d = len(rows[0])
    # initial simplicial cone from d linearly independent rows
    basis_rows: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis_rows] + [r], d) > len(basis_rows):
            basis_rows.append(i)
            if len(basis_rows) == d:
                break
    if len(basis_rows) < d:
        raise ValueError("cone is not pointed")
    b = [rows[i] for i in basis_rows]
    rays = []
    for k in range(d):
        rhs = [ZERO] * d
        rhs[k] = -ONE
        sol = solve_linear(b, rhs, d)
        rays.append(_integral(sol[0]))
    processed = list(basis_rows)

    def zero_mask(ray):
        m = 0
        for bit, i in enumerate(processed):
            if dot(rows[i], ray) == 0:
                m |= 1 << bit
        return m

    masks = [zero_mask(r) for r in rays]
    for i in range(len(rows)):
        if i in basis_rows:
            continue
        h = rows[i]
        vals = [dot(h, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        if not pos:
            processed.append(i)
            bit = 1 << (len(processed) - 1)
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            continue
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays, new_masks = [], []
        bit = 1 << len(processed)
        for k in neg:
            new_rays.append(rays[k])
            new_masks.append(masks[k])
        for k in zer:
            new_rays.append(rays[k])
            new_masks.append(masks[k] | bit)
        for kp in pos:
            for kn in neg:
                common = masks[kp] & masks[kn]
                if bin(common).count("1") < d - 2:
                    continue
                adjacent = True
                for kk in range(len(rays)):
                    if kk != kp and kk != kn and (masks[kk] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[kp], vals[kn]
                r = tuple(vp * a - vn * c for a, c in zip(rays[kn], rays[kp]))
                new_rays.append(_integral(r))
                new_masks.append(common | bit)
        processed.append(i)
        rays, masks = new_rays, new_masks
    return rays


def enumerate_vertices(p: HPoly) -> VPoly:
    """Vertices of a bounded ``p`` by the double description method.

    The polytope is first reduced to its affine hull (explicit and implicit
    equalities), then the homogenized cone is processed row by row.
    """
    bounded, ray = is_bounded(p)
    if not bounded:
        raise UnboundedError(ray)
    out = solve(LinProgram((ZERO,) * p.dim, p))
    if out.infeasible:
        return VPoly(p.space, ())
    x0, basis, implicit = affine_hull(p)
    k = len(basis)
    if k == 0:
        return VPoly(p.space, (x0,))
    skip = set(implicit)
    cone_rows = []
    for i, (r, s, rhs) in enumerate(p.rows()):
        if s == EQ or i in skip:
            continue
        coeffs = tuple(dot(r, col) for col in basis)
        slack = rhs - dot(r, x0)
        if all(c == 0 for c in coeffs):
            continue
        cone_rows.append(coeffs + (-slack,))
    cone_rows.append((ZERO,) * k + (-ONE,))
    seen = {}
    for ray in _double_description(cone_rows):
        s = ray[-1]
        if s <= 0:
            raise AssertionError("recession ray in a bounded polytope")
        t = [Fraction(v, s) for v in ray[:-1]]
        x = tuple(x0[j] + sum((t[c] * basis[c][j] for c in range(k) if t[c]), ZERO)
                  for j in range(p.dim))
        seen[x] = None
    return VPoly(p.space, tuple(sorted(seen)))


def generators(p: HPoly) -> tuple[tuple, tuple]:
    """``(points, rays)`` with ``p = conv(points) + cone(rays)``.

    Works for unbounded and non-pointed polyhedra: a lineality direction ``l``
    shows up as the pair ``l, -l`` and the points are taken in a slice
    orthogonal to the lineality space.  An empty ``p`` gives ``((), ())``.
    """
    out = solve(LinProgram((ZERO,) * p.dim, p))
    if out.infeasible:
        return (), ()
    x0, basis, implicit = affine_hull(p)
    k = len(basis)
    if k == 0:
        return (x0,), ()
    skip = set(implicit)
    cone_rows = []
    for i, (r, s, rhs) in enumerate(p.rows()):
        if s == EQ or i in skip:
            continue
        coeffs = tuple(dot(r, col) for col in basis)
        if any(coeffs):
            cone_rows.append(coeffs + (dot(r, x0) - rhs,))
    lineal = nullspace([row[:-1] for row in cone_rows], k)
    for l in lineal:
        cone_rows.append(tuple(l) + (ZERO,))
        cone_rows.append(tuple(-v for v in l) + (ZERO,))
    cone_rows.append((ZERO,) * k + (-ONE,))

    def lift(t, scale):
        return tuple(scale * x0[j] + sum((t[c] * basis[c][j] for c in range(k) if t[c]), ZERO)
                     for j in range(p.dim))

    points, rays = {}, {}
    for ray in _double_description(cone_rows):
        s = ray[-1]
        if s > 0:
            points[lift([Fraction(v, s) for v in ray[:-1]], ONE)] = None
        else:
            rays[_integral(lift(ray[:-1], ZERO))] = None
    for l in lineal:
        d = _integral(lift(l, ZERO))
        rays[d] = None
        rays[tuple(-v for v in d)] = None
    return tuple(sorted(points)), tuple(sorted(rays))


def enumerate_vertices_bruteforce(p: HPoly) -> VPoly:
    """Reference vertex enumeration: try every basis of active constraints.

    Exponential; meant as an independent oracle for small instances.
    """
    bounded, ray = is_bounded(p)
    if not bounded:
        raise UnboundedError(ray)
    n = p.dim
    eq_idx = [i for i, s in enumerate(p.senses) if s == EQ]
    le_idx = [i for i, s in enumerate(p.senses) if s == LE]
    eq_rows = [p.a[i] for i in eq_idx]
    r_eq = rank(eq_rows, n) if eq_rows else 0
    need = n - r_eq
    found = {}
    for subset in itertools.combinations(le_idx, need):
        idx = eq_idx + list(subset)
        a = [p.a[i] for i in idx]
        sol = solve_linear(a, [p.b[i] for i in idx], n)
        if sol is None or sol[1]:
            continue
        x = sol[0]
        if contains(p, x):
            found[x] = None
    return VPoly(p.space, tuple(sorted(found)))


def hull(v: VPoly) -> HPoly:
    """Irredundant H-representation of ``Conv(v.vertices)`` (affine-hull equalities + facets)."""
    pts = list(v.vertices)
    if not pts:
        raise ValueError("hull of an empty point set")
    n = v.dim
    p0 = pts[0]
    diffs = [tuple(a - b for a, b in zip(q, p0)) for q in pts[1:]]
    normals = nullspace(diffs, n) if diffs else [
        tuple(ONE if j == k else ZERO for j in range(n)) for k in range(n)]
    rows = []
    if normals:
        red, rk, _ = rref(normals, n)
        for r in red[:rk]:
            coeffs, rhs = normalize_row(r, dot(r, p0), equality=True)
            rows.append((coeffs, EQ, rhs))
    _, k, pivots = rref(diffs, n) if diffs else ((), 0, [])
    if k >= 1:
        local = [tuple(q[j] for j in pivots) for q in pts]
        facets = {}
        for subset in itertools.combinations(range(len(local)), k):
            m = [local[s] + (-ONE,) for s in subset]
            ns = nullspace(m, k + 1)
            if len(ns) != 1:
                continue
            a, beta = ns[0][:k], ns[0][k]
            vals = [dot(a, y) - beta for y in local]
            if all(val <= 0 for val in vals):
                pass
            elif all(val >= 0 for val in vals):
                a, beta = tuple(-x for x in a), -beta
            else:
                continue
            full = [ZERO] * n
            for c, j in zip(a, pivots):
                full[j] = c
            facets[normalize_row(full, beta)] = None
        for coeffs, rhs in sorted(facets):
            rows.append((coeffs, LE, rhs))
    return HPoly.from_rows(v.space, rows)


def in_convex_hull(points: Sequence[Sequence], x: Sequence) -> bool:
    """LP test: is ``x`` a convex combination of ``points``?"""
    m = len(points)
    if m == 0:
        return False
    n = len(x)
    a_eq = [tuple(pt[j] for pt in points) for j in range(n)] + [(ONE,) * m]
    b_eq = list(x) + [ONE]
    a_le = [tuple(-ONE if i == k else ZERO for i in range(m)) for k in range(m)]
    out = solve_system((ZERO,) * m, a_le, [ZERO] * m, a_eq, b_eq, n=m)
    return out.optimal


def _included(p: HPoly, q: HPoly) -> bool:
    """``p ⊆ q`` by maximizing every row of ``q`` over ``p``."""
    if solve(LinProgram((ZERO,) * p.dim, p)).infeasible:
        return True
    for r, s, rhs in q.rows():
        out = maximize(p, r)
        if not out.optimal or out.optimum > rhs:
            return False
        if s == EQ:
            out = maximize(p, tuple(-c for c in r))
            if not out.optimal or out.optimum > -rhs:
                return False
    return True


def poly_equal(p: HPoly | VPoly, q: HPoly | VPoly) -> bool:
    """Exact equality of solution sets (same variable space required)."""
    if p.space.variables != q.space.variables:
        raise ValueError("poly_equal needs both polyhedra over the same VarSpace")
    if isinstance(p, VPoly) and isinstance(q, VPoly):
        return (all(in_convex_hull(q.vertices, x) for x in p.vertices)
                and all(in_convex_hull(p.vertices, x) for x in q.vertices))
    if isinstance(p, VPoly):
        p, q = q, p
    if isinstance(q, VPoly):
        if not is_bounded(p)[0]:
            return False
        vp = enumerate_vertices(p).vertices
        return (all(contains(p, x) for x in q.vertices)
                and all(in_convex_hull(q.vertices, x) for x in vp))
    if is_bounded(p)[0] and is_bounded(q)[0]:
        vp = enumerate_vertices(p).vertices
        vq = enumerate_vertices(q).vertices
        return all(contains(q, x) for x in vp) and all(contains(p, x) for x in vq)
    return _included(p, q) and _included(q, p)
