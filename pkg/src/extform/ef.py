"""Extended-formulation checks: independence of variable spaces, augmentation,
verdicts under the three competing EF definitions, and relationship classes.

Definitions, by number:

1. projection: ``proj_x(U) == X``;
2. image: some given map ``pi`` has ``pi(U) == X`` (witness verification only);
3. lifting iff: ``x in X  <=>  exists w: (x, w) in U``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .core import EQ, LE, AffineMapSpec, HPoly, VarSpace, VPoly
from .lp import is_empty, maximize
from .polyhedron import (UnboundedError, enumerate_vertices, generators, hull, is_bounded,
                         normalize_row, poly_equal)
from .projection import ProjectionResult, project, project_degenerate_case
from .rational import ONE, ZERO, as_rational, dot, mat

Poly = Union[HPoly, VPoly]


class NotAnAugmentationError(ValueError):
    """The candidate does not contain the base's rows, so it is not an augmentation
    by construction."""


def as_hpoly(p: Poly) -> HPoly:
    return hull(p) if isinstance(p, VPoly) else p


def _vertices(p: Poly) -> tuple:
    if isinstance(p, VPoly):
        return p.vertices
    return enumerate_vertices(p).vertices


def _embed_pair(target: VarSpace, cand: HPoly) -> tuple[HPoly, list[int]]:
    """Candidate restated over candidate-vars + missing target vars, and the
    positions of target's variables (in target order) inside that space."""
    common = cand.space.union(target)
    return cand.embed(common), [common.position(v) for v in target.variables]


# ------------------------------------------------------------- independence

def independent_spaces(p: Poly, q: Poly, cross_check: bool = True) -> bool:
    """True iff ``p`` and ``q`` share no class of variables.

    When both are non-empty polytopes the answer is cross-checked against the
    projection form: embedded in one common space, each projects onto the
    other's own variables as the whole space.
    """
    structural = not (set(p.space.classes) & set(q.space.classes))
    if cross_check:
        hp, hq = as_hpoly(p), as_hpoly(q)
        usable = all(is_bounded(h)[0] and not is_empty(h)[0] for h in (hp, hq))
        if usable:
            projected = _projection_independence(hp, hq)
            if projected != structural:
                raise AssertionError(
                    "label-based and projection-based independence disagree")
    return structural


def _projection_independence(p: HPoly, q: HPoly) -> bool:
    common = p.space.union(q.space)
    pp, qq = p.embed(common), q.embed(common)
    x = [common.position(v) for v in p.space.variables]
    y = [k for k in range(len(common)) if k not in set(x)]
    if not y:
        return False

    def full(h: HPoly, keep: list[int]) -> bool:
        if all(r[k] == 0 for r in h.a for k in keep):
            return project_degenerate_case(h, keep).is_full_space
        return project(h, keep).is_full_space

    cond1 = full(pp, x) and full(qq, y)
    cond2 = full(pp, y) and full(qq, x)
    return cond1 != cond2


# ------------------------------------------------------------- augmentation

class AugmentationStatus(enum.Enum):
    AUGMENTS = "augments"
    NOT_BY_CONSTRUCTION = "not an augmentation by construction"
    CUTS_BASE = "added rows cut the base"


def _row_key(coeffs, sense, rhs):
    c, r = normalize_row(coeffs, rhs, equality=(sense == EQ))
    return c, sense, r


def augmentation_status(base: HPoly, candidate: HPoly) -> AugmentationStatus:
    """Classify ``candidate`` against ``base``.

    ``candidate`` must contain every row of ``base`` (up to a positive factor)
    with zero coefficients on its extra variables; then it augments ``base``
    iff projecting it onto ``base``'s variables gives back ``base``.
    """
    if is_empty(base)[0]:
        raise ValueError("augmentation is defined for a non-empty base")
    if any(v not in candidate.space for v in base.space.variables):
        return AugmentationStatus.NOT_BY_CONSTRUCTION
    pos = [candidate.space.position(v) for v in base.space.variables]
    others = [k for k in range(candidate.dim) if k not in set(pos)]
    have = set()
    for r, s, rhs in candidate.rows():
        if any(r[k] != 0 for k in others):
            continue
        have.add(_row_key([r[k] for k in pos], s, rhs))
    if any(_row_key(r, s, rhs) not in have for r, s, rhs in base.rows()):
        return AugmentationStatus.NOT_BY_CONSTRUCTION
    if not others:
        return (AugmentationStatus.AUGMENTS if poly_equal(candidate.embed(base.space), base)
                else AugmentationStatus.CUTS_BASE)
    proj = project(candidate, pos)
    got = proj.as_hpoly(candidate.space.subspace(sorted(pos))).embed(base.space)
    return AugmentationStatus.AUGMENTS if poly_equal(got, base) else AugmentationStatus.CUTS_BASE


def check_augmentation(base: HPoly, candidate: HPoly, strict: bool = False) -> bool:
    """Does ``candidate`` augment ``base``?

    With ``strict=True`` a candidate missing some of ``base``'s rows raises
    :class:`NotAnAugmentationError` instead of returning False.
    """
    status = augmentation_status(base, candidate)
    if strict and status is AugmentationStatus.NOT_BY_CONSTRUCTION:
        raise NotAnAugmentationError(status.value)
    return status is AugmentationStatus.AUGMENTS


@dataclass(frozen=True)
class AugmentationSpec:
    """Coupling data for :func:`construct_mutual_augmentation`.

    ``b1`` (q x n1) multiplies the first polytope's variables, ``b2`` (q x n2)
    the second's; ``c1``/``c2`` are the diagonals used to rescale each
    polytope's own rows (strictly positive on ``<=`` rows, nonzero on ``=`` rows).
    """

    b1: tuple
    b2: tuple
    c1: tuple
    c2: tuple

    def __post_init__(self):
        b1, b2 = mat(self.b1), mat(self.b2)
        if len(b1) != len(b2) or not b1:
            raise ValueError("b1 and b2 need the same positive number of rows")
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)
        object.__setattr__(self, "c1", _diagonal(self.c1))
        object.__setattr__(self, "c2", _diagonal(self.c2))

    @property
    def slack_count(self) -> int:
        return len(self.b1)


def _diagonal(c) -> tuple:
    c = list(c)
    if c and isinstance(c[0], (list, tuple)):
        for i, row in enumerate(c):
            for j, v in enumerate(row):
                if i != j and as_rational(v) != 0:
                    raise ValueError("scaling matrix must be diagonal")
        c = [row[i] for i, row in enumerate(c)]
    c = tuple(as_rational(v) for v in c)
    if any(v == 0 for v in c):
        raise ValueError("diagonal scaling entries must be nonzero")
    return c


def construct_mutual_augmentation(p1: HPoly, p2: HPoly, spec: AugmentationSpec,
                                  slack_label: str = "u") -> HPoly:
    """Build ``W`` that augments both ``p1`` and ``p2`` (independent spaces):

    ``C1 A1 x1 <= C1 a1;  B1 x1 + B2 x2 - u <= 0;  C2 A2 x2 <= C2 a2;  u >= 0``.

    Both projections are verified before returning.
    """
    if set(p1.space.classes) & set(p2.space.classes):
        raise ValueError("p1 and p2 must be in independent spaces")
    if slack_label in p1.space.classes or slack_label in p2.space.classes:
        raise ValueError(f"slack label {slack_label!r} already in use")
    for name, p in (("p1", p1), ("p2", p2)):
        if is_empty(p)[0]:
            raise ValueError(f"{name} is empty")
    q = spec.slack_count
    if any(len(r) != p1.dim for r in spec.b1) or any(len(r) != p2.dim for r in spec.b2):
        raise ValueError("b1/b2 column counts must match the polytopes' dimensions")
    if len(spec.c1) != p1.nrows or len(spec.c2) != p2.nrows:
        raise ValueError("c1/c2 need one diagonal entry per row of p1/p2")
    for p, c in ((p1, spec.c1), (p2, spec.c2)):
        if any(s == LE and v < 0 for s, v in zip(p.senses, c)):
            raise ValueError("negative scaling would reverse an inequality row")
    space = p1.space + p2.space + VarSpace.of((slack_label, q))
    n1, n2 = p1.dim, p2.dim
    zero = lambda k: [ZERO] * k
    rows = []
    for (r, s, rhs), c in zip(p1.rows(), spec.c1):
        rows.append(([c * v for v in r] + zero(n2 + q), s, c * rhs))
    for j in range(q):
        u = zero(q)
        u[j] = -ONE
        rows.append((list(spec.b1[j]) + list(spec.b2[j]) + u, LE, 0))
    for (r, s, rhs), c in zip(p2.rows(), spec.c2):
        rows.append((zero(n1) + [c * v for v in r] + zero(q), s, c * rhs))
    for j in range(q):
        u = zero(q)
        u[j] = -ONE
        rows.append((zero(n1 + n2) + u, LE, 0))
    w = HPoly.from_rows(space, rows)
    for p, lo in ((p1, 0), (p2, n1)):
        proj = project(w, list(range(lo, lo + p.dim)))
        got = proj.as_hpoly(p.space)
        if not poly_equal(HPoly(p.space, got.a, got.b, got.senses), p):
            raise RuntimeError("constructed W does not project back onto its factor")
    return w


# ------------------------------------------------------------- EF verdicts

@dataclass(frozen=True)
class EFVerdict:
    """Outcome of EF checks of ``candidate`` for ``target``; ``None`` = not evaluated."""

    def1: Optional[bool] = None
    def2: Optional[AffineMapSpec] = None
    def3: Optional[bool] = None
    projection: Optional[ProjectionResult] = None
    notes: dict = field(default_factory=dict)

    @property
    def def2_holds(self) -> bool:
        return self.def2 is not None


def _def1(target: HPoly, candidate: HPoly) -> tuple[bool, ProjectionResult]:
    emb, keep = _embed_pair(target.space, candidate)
    proj = project(emb, keep)
    if proj.kind.name == "POLYHEDRON":
        got = proj.poly.embed(target.space)
    else:
        got = proj.as_hpoly(target.space)
    return poly_equal(got, target), proj


def _def3(target: Poly, candidate: HPoly, notes: dict) -> bool:
    th = as_hpoly(target)
    emb, keep = _embed_pair(th.space, candidate)
    # x in X  =>  some w lifts x; checked on points, and on rays via the recession cone
    if isinstance(target, VPoly):
        points, rays = target.vertices, ()
    else:
        points, rays = generators(th)
    recession = HPoly(emb.space, emb.a, (ZERO,) * emb.nrows, emb.senses)
    for base, v in [(emb, v) for v in points] + [(recession, r) for r in rays]:
        rows = []
        for k, val in zip(keep, v):
            e = [ZERO] * emb.dim
            e[k] = ONE
            rows.append((e, EQ, val))
        if is_empty(base.with_rows(rows))[0]:
            key = "def3_unliftable_point" if base is emb else "def3_unliftable_ray"
            notes[key] = v
            return False
    # (x, w) in U  =>  x in X
    for r, s, rhs in th.rows():
        for sign in ((1, -1) if s == EQ else (1,)):
            obj = [ZERO] * emb.dim
            for k, c in zip(keep, r):
                obj[k] = sign * c
            out = maximize(emb, obj)
            bound = sign * rhs
            if out.unbounded:
                step = (bound - dot(obj, out.point)) / dot(obj, out.ray) + 1
                pt = tuple(a + step * b for a, b in zip(out.point, out.ray))
            elif out.optimal and out.optimum > bound:
                pt = out.point
            else:
                continue
            notes["def3_outside_point"] = tuple(pt[k] for k in keep)
            return False
    return True


def _def2(target: Poly, candidate: HPoly, witness: AffineMapSpec, notes: dict) -> bool:
    bounded, ray = is_bounded(candidate)
    if not bounded:
        raise UnboundedError(ray)
    if set(witness.codomain.variables) != set(target.space.variables):
        raise ValueError("witness codomain must be the target's variables")
    if any(v not in candidate.space for v in witness.domain.variables):
        raise ValueError("witness domain must be variables of the candidate")
    dom = [candidate.space.position(v) for v in witness.domain.variables]
    order = [witness.codomain.position(v) for v in target.space.variables]
    images = []
    for v in enumerate_vertices(candidate).vertices:
        y = witness(tuple(v[k] for k in dom))
        images.append(tuple(y[k] for k in order))
    if not images:
        return is_empty(as_hpoly(target))[0]
    ok = poly_equal(VPoly(target.space, tuple(images)), target)
    if not ok:
        notes["def2_images"] = tuple(images)
    return ok


def check_ef(target: Poly, candidate: HPoly, definition: Optional[int] = None,
             witness: Optional[AffineMapSpec] = None) -> EFVerdict:
    """Is ``candidate`` an extended formulation of ``target``?

    ``definition`` selects 1, 2 or 3; ``None`` evaluates 1 and 3, plus 2 when a
    witness map is supplied.  Definition 2 only verifies the given witness.
    """
    if definition not in (None, 1, 2, 3):
        raise ValueError("definition must be 1, 2 or 3")
    if definition == 2 and witness is None:
        raise ValueError("definition 2 needs a witness map (existence is not searched)")
    notes: dict = {}
    d1 = d3 = None
    d2 = None
    proj = None
    th = as_hpoly(target)
    if definition in (None, 1):
        d1, proj = _def1(th, candidate)
        notes["projection"] = str(proj)
    if definition in (None, 3):
        d3 = _def3(target, candidate, notes)
    if witness is not None and definition in (None, 2):
        if _def2(target, candidate, witness, notes):
            d2 = witness
        else:
            notes["def2"] = "witness rejected"
    return EFVerdict(d1, d2, d3, proj, notes)


# ------------------------------------------------------------- classification

class RelationTag(enum.Enum):
    WELL_DEFINED_EF = "WellDefinedEF"
    NO_RELATION = "NoRelation"
    ILL_DEFINED = "IllDefined"


@dataclass(frozen=True)
class RelationClass:
    tag: RelationTag
    forward: EFVerdict      # q as a formulation of p
    backward: EFVerdict     # p as a formulation of q
    independent: bool
    caveat: Optional[str] = None


def _witness_direction(w: AffineMapSpec, src: Poly, dst: Poly) -> bool:
    return (all(v in src.space for v in w.domain.variables)
            and set(w.codomain.variables) == set(dst.space.variables))


def classify_relationship(p: Poly, q: Poly,
                          witnesses: Iterable[AffineMapSpec] = ()) -> RelationClass:
    """Relate ``p`` and ``q``.

    Overlapping spaces: ``WellDefinedEF`` if either projects onto the other,
    else ``NoRelation``.  Independent spaces: ``IllDefined`` if a supplied map
    verifies under definition 2 (while 1 and 3 necessarily fail), else
    ``NoRelation`` with a caveat, since maps are only verified, never searched.
    """
    witnesses = list(witnesses)
    indep = independent_spaces(p, q)
    hp, hq = as_hpoly(p), as_hpoly(q)
    verdicts = []
    for target, cand in ((p, hq), (q, hp)):
        v = check_ef(target, cand)
        src = q if cand is hq else p
        for w in witnesses:
            if not _witness_direction(w, src, target):
                continue
            if not is_bounded(cand)[0]:
                v.notes.setdefault("def2_skipped", "candidate unbounded")
                continue
            notes: dict = {}
            if _def2(target, cand, w, notes):
                v = EFVerdict(v.def1, w, v.def3, v.projection, {**v.notes, **notes})
                break
        verdicts.append(v)
    fwd, bwd = verdicts
    if not indep:
        tag = (RelationTag.WELL_DEFINED_EF if fwd.def1 or bwd.def1
               else RelationTag.NO_RELATION)
        return RelationClass(tag, fwd, bwd, indep)
    if fwd.def2_holds or bwd.def2_holds:
        return RelationClass(RelationTag.ILL_DEFINED, fwd, bwd, indep)
    return RelationClass(RelationTag.NO_RELATION, fwd, bwd, indep,
                         caveat="no supplied map verified; map existence was not searched")


def overlap_augmentation_invariance(p1: HPoly, p2: HPoly, p3: HPoly) -> bool:
    """For overlapping ``p1`` and ``p2`` and an augmentation ``p3`` of ``p2``:
    does ``p3`` project onto ``p1`` exactly when ``p2`` does?  Always True."""
    if not set(p1.space.classes) <= set(p2.space.classes):
        raise ValueError("p1's classes must be included in p2's")
    if not any(c != 0 for r in p1.a for c in r):
        raise ValueError("p1 has an all-zero constraint matrix")
    if not any(c != 0 for r in p2.block(p1.space.classes) for c in r):
        raise ValueError("p2 has an all-zero block on p1's variables")
    if not check_augmentation(p2, p3):
        raise ValueError("p3 is not an augmentation of p2")
    return check_ef(p1, p3, 1).def1 == check_ef(p1, p2, 1).def1
