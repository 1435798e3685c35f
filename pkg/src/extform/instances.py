"""Concrete polytopes used by the verification suite, plus seeded random generators.

All generators take a :class:`random.Random` so callers control determinism.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import EQ, LE, AffineMapSpec, HPoly, VarSpace
from .ef import AugmentationSpec
from .lp import maximize
from .rational import ONE, ZERO

F = Fraction


def _nonneg_rows(n: int, offset: int = 0, width: int | None = None):
    width = n if width is None else width
    rows = []
    for k in range(n):
        c = [ZERO] * width
        c[offset + k] = -ONE
        rows.append((c, LE, 0))
    return rows


# ---------------------------------------------------------------- fixed examples

def indep_p() -> HPoly:
    """``x1 - x2 >= 6, 0 <= x1 <= 6, 0 <= x2 <= 5`` over class ``x``; a single point."""
    a = [[-1, 1], [-1, 0], [1, 0], [0, -1], [0, 1]]
    b = [-6, 0, 6, 0, 5]
    return HPoly.from_rows(VarSpace.of(("x", 2)), [(r, LE, v) for r, v in zip(a, b)])


def indep_q() -> HPoly:
    """``y1 + y2 = 6, y1 >= 3/2, y2 >= 0`` over class ``y``, with the equality as two rows."""
    a = [[1, 1], [-1, -1], [-1, 0], [0, -1]]
    b = [6, -6, F(-3, 2), 0]
    return HPoly.from_rows(VarSpace.of(("y", 2)), [(r, LE, v) for r, v in zip(a, b)])


def joint_space() -> VarSpace:
    return VarSpace.of(("x", 2), ("y", 2))


def indep_p_lifted() -> HPoly:
    return indep_p().embed(joint_space())


def indep_q_lifted() -> HPoly:
    return indep_q().embed(joint_space())


def collapse_map() -> AffineMapSpec:
    """``x = [[1, 1], [0, 0]] y``."""
    return AffineMapSpec(((1, 1), (0, 0)), (0, 0), VarSpace.of(("y", 2)), VarSpace.of(("x", 2)))


def pair_p1() -> HPoly:
    """``2 x1 + x2 <= 6`` with ``x >= 0``."""
    rows = [([2, 1], LE, 6)] + _nonneg_rows(2)
    return HPoly.from_rows(VarSpace.of(("x", 2)), rows)


def pair_p2() -> HPoly:
    """``18 w1 - w2 <= 23, 59 w1 + w3 <= 84`` with ``w >= 0`` (unbounded in ``w2``, ``w3``)."""
    rows = [([18, -1, 0], LE, 23), ([59, 0, 1], LE, 84)] + _nonneg_rows(3)
    return HPoly.from_rows(VarSpace.of(("w", 3)), rows)


def pair_spec() -> AugmentationSpec:
    """Coupling for :func:`pair_p1`/:func:`pair_p2`; the printed scalings apply to the
    structural rows, nonnegativity rows keep factor 1."""
    return AugmentationSpec(
        b1=((-1, 2), (3, -4)),
        b2=((5, -6, 7), (-10, 9, -8)),
        c1=(7, 1, 1),
        c2=(2, F(1, 2), 1, 1, 1),
    )


# ---------------------------------------------------------------- random helpers

def rand_rat(rng: random.Random, lo: int = -5, hi: int = 5, den: int = 1) -> Fraction:
    return F(rng.randint(lo * den, hi * den), den)


def rand_matrix(rng: random.Random, m: int, n: int, lo=-4, hi=4) -> list[list[Fraction]]:
    return [[F(rng.randint(lo, hi)) for _ in range(n)] for _ in range(m)]


def random_polytope(rng: random.Random, space: VarSpace, extra_rows: int = 2,
                    box: int = 4) -> HPoly:
    """A non-empty polytope: a box ``[0, box]^n`` intersected with random cuts
    through a random interior-ish point's neighbourhood."""
    n = len(space)
    centre = [F(rng.randint(1, 2 * box - 1), 2) for _ in range(n)]
    rows = []
    for k in range(n):
        e = [ZERO] * n
        e[k] = ONE
        rows.append(([-v for v in e], LE, 0))
        rows.append((e, LE, box))
    for _ in range(extra_rows):
        c = [F(rng.randint(-3, 3)) for _ in range(n)]
        if all(v == 0 for v in c):
            continue
        val = sum(a * b for a, b in zip(c, centre))
        rows.append((c, LE, val + rng.randint(0, 3)))
    return HPoly.from_rows(space, rows)


def random_bounded_hpoly(rng: random.Random, dim: int, rows: int) -> HPoly:
    """Random cuts around the origin plus a bounding box; may include equalities."""
    space = VarSpace.of(("x", dim))
    out = []
    for k in range(dim):
        e = [ZERO] * dim
        e[k] = ONE
        out.append((e, LE, rng.randint(1, 4)))
        out.append(([-v for v in e], LE, rng.randint(1, 4)))
    for _ in range(rows):
        c = [F(rng.randint(-3, 3)) for _ in range(dim)]
        if all(v == 0 for v in c):
            continue
        out.append((c, LE, rng.randint(0, 4)))
    if dim > 1 and rng.random() < 0.2:
        c = [F(rng.randint(-2, 2)) for _ in range(dim)]
        if any(c):
            out.append((c, EQ, 0))
    return HPoly.from_rows(space, out)


# ---------------------------------------------------------------- augmentation-example family

@dataclass(frozen=True)
class LinkedFamily:
    x: HPoly
    y: HPoly
    link: HPoly
    k1: HPoly
    k2: HPoly
    k3: HPoly


def random_linked_family(rng: random.Random, p: int = 2, q: int = 2, m: int = 1) -> LinkedFamily:
    """Random ``X``, ``Y`` and linking rows ``B x + C y <= c`` that are redundant on
    ``X x Y``, together with the three combined polyhedra.

    Linking rows have nonzero ``B`` and ``C`` parts, so they can coincide with
    neither a row of ``X`` nor a row of ``Y``.
    """
    xs, ys = VarSpace.of(("x", p)), VarSpace.of(("y", q))
    both = xs + ys
    x = random_polytope(rng, xs, extra_rows=1)
    y = random_polytope(rng, ys, extra_rows=1)
    prod = x.embed(both).with_rows(y.embed(both).rows())
    link = []
    while len(link) < m:
        bc = rand_matrix(rng, 1, p + q, -3, 3)[0]
        if all(v == 0 for v in bc[:p]) or all(v == 0 for v in bc[p:]):
            continue
        top = maximize(prod, bc).optimum
        link.append((bc, LE, top + rng.randint(0, 3)))
    lp = HPoly.from_rows(both, link)
    xe, ye = x.embed(both), y.embed(both)
    k1 = xe.with_rows(lp.rows())
    k2 = lp.with_rows(ye.rows())
    k3 = xe.with_rows(lp.rows()).with_rows(ye.rows())
    return LinkedFamily(x, y, lp, k1, k2, k3)


# ---------------------------------------------------------------- overlapping-space triples

def random_overlap_triple(rng: random.Random, make_ef: bool):
    """``(p1, p2, p3)``: ``p1`` over ``x``; ``p2`` over ``x, w`` (an EF of ``p1`` when
    ``make_ef``, otherwise cutting ``p1``); ``p3`` augments ``p2`` with class ``v``."""
    nx, nw = rng.randint(1, 2), rng.randint(1, 2)
    xs = VarSpace.of(("x", nx))
    p1 = random_polytope(rng, xs, extra_rows=1)
    sp2 = xs + VarSpace.of(("w", nw))
    rows = list(p1.embed(sp2).rows())
    for k in range(nw):
        c = [ZERO] * (nx + nw)
        c[nx + k] = -ONE
        rows.append((c, LE, 0))
        c = [F(rng.randint(-2, 2)) for _ in range(nx)] + [ZERO] * nw
        c[nx + k] = ONE
        rows.append((c, LE, 20))
    if not make_ef:
        # halve the range of the first coordinate
        c = [ZERO] * (nx + nw)
        c[0] = ONE
        e0 = [ONE] + [ZERO] * (nx - 1)
        lo = -maximize(p1, [-v for v in e0]).optimum
        hi = maximize(p1, e0).optimum
        rows.append((c, LE, (lo + hi) / 2))
    p2 = HPoly.from_rows(sp2, rows)
    nv = rng.randint(1, 2)
    sp3 = sp2 + VarSpace.of(("v", nv))
    rows3 = list(p2.embed(sp3).rows())
    for k in range(nv):
        g = [F(rng.randint(-3, 3)) for _ in range(nx + nw)] + [ZERO] * nv
        g[nx + nw + k] = -ONE
        rows3.append((g, LE, rng.randint(0, 2)))
        c = [ZERO] * (nx + nw + nv)
        c[nx + nw + k] = -ONE
        rows3.append((c, LE, 0))
    p3 = HPoly.from_rows(sp3, rows3)
    return p1, p2, p3


# ---------------------------------------------------------------- independent pairs

def random_independent_pair(rng: random.Random):
    p = random_polytope(rng, VarSpace.of(("x", rng.randint(1, 3))), extra_rows=rng.randint(0, 2))
    q = random_polytope(rng, VarSpace.of(("y", rng.randint(1, 3))), extra_rows=rng.randint(0, 2))
    return p, q


def random_aug_spec(rng: random.Random, p1: HPoly, p2: HPoly) -> AugmentationSpec:
    q = rng.randint(1, 2)
    return AugmentationSpec(
        b1=tuple(tuple(rand_matrix(rng, 1, p1.dim)[0]) for _ in range(q)),
        b2=tuple(tuple(rand_matrix(rng, 1, p2.dim)[0]) for _ in range(q)),
        c1=tuple(F(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(p1.nrows)),
        c2=tuple(F(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(p2.nrows)),
    )


# ---------------------------------------------------------------- affine-image LP pair

@dataclass(frozen=True)
class ImageInstance:
    y: HPoly                 # Y over class y, includes y >= 0
    cmap: AffineMapSpec      # x = C y + b with C >= 0
    alpha: tuple

    def joint(self) -> HPoly:
        """``{(x, y): x - C y = b, x >= 0, y in Y}``."""
        p, q = len(self.cmap.codomain), len(self.cmap.domain)
        space = self.cmap.codomain + self.cmap.domain
        rows = []
        for i in range(p):
            c = [ZERO] * (p + q)
            c[i] = ONE
            for j in range(q):
                c[p + j] = -self.cmap.matrix[i][j]
            rows.append((c, EQ, self.cmap.offset[i]))
        rows += _nonneg_rows(p, 0, p + q)
        return HPoly.from_rows(space, rows).with_rows(self.y.embed(space).rows())


def random_image_instance(rng: random.Random) -> ImageInstance:
    p, q = rng.randint(1, 3), rng.randint(1, 3)
    y = random_polytope(rng, VarSpace.of(("y", q)), extra_rows=rng.randint(0, 2))
    c = tuple(tuple(F(rng.randint(0, 4)) for _ in range(q)) for _ in range(p))
    b = tuple(F(rng.randint(0, 5)) for _ in range(p))
    cmap = AffineMapSpec(c, b, y.space, VarSpace.of(("x", p)))
    alpha = tuple(F(rng.randint(-5, 5)) for _ in range(p))
    return ImageInstance(y, cmap, alpha)


# ---------------------------------------------------------------- degenerate systems

def random_degenerate_system(rng: random.Random) -> HPoly:
    """A system over ``(x, w)`` whose ``x`` block is zero; empty about half the time."""
    nx, nw = rng.randint(1, 3), rng.randint(1, 3)
    space = VarSpace.of(("x", nx), ("w", nw))
    rows = []
    for _ in range(rng.randint(1, 5)):
        c = [ZERO] * nx + [F(rng.randint(-3, 3)) for _ in range(nw)]
        rows.append((c, LE, rng.randint(-3, 3)))
    if rng.random() < 0.3:
        c = [ZERO] * nx + [F(rng.randint(-2, 2)) for _ in range(nw)]
        rows.append((c, EQ, rng.randint(-2, 2)))
    return HPoly.from_rows(space, rows)
