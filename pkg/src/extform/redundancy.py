"""Row- and column-redundancy, and minimal-description reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import EQ, AffineMapSpec, HPoly
from .lp import is_empty, solve_system
from .polyhedron import UnboundedError, enumerate_vertices, in_convex_hull, is_bounded
from .rational import ONE, ZERO, solve_linear


def _max_over(a_le, b_le, a_eq, b_eq, obj, n):
    out = solve_system(tuple(-c for c in obj), a_le, b_le, a_eq, b_eq, n=n)
    if out.optimal:
        return -out.optimum
    if out.unbounded:
        return None
    raise ValueError("redundancy test on an empty system")


def redundant_le_rows(a_le: Sequence, b_le: Sequence, a_eq: Sequence = (), b_eq: Sequence = (),
                      n: int | None = None) -> list[int]:
    """Sequential pass over ``<=`` rows in ascending order; returns the indices dropped.

    A row is dropped when the rows still kept (earlier survivors plus all later
    rows) and the equalities already imply it.
    """
    n = len(a_le[0]) if n is None else n
    alive = list(range(len(a_le)))
    dropped = []
    for i in range(len(a_le)):
        others = [k for k in alive if k != i]
        best = _max_over([a_le[k] for k in others], [b_le[k] for k in others],
                         a_eq, b_eq, a_le[i], n)
        if best is not None and best <= b_le[i]:
            alive.remove(i)
            dropped.append(i)
    return dropped


def _row_implied(p: HPoly, rows: list[int], i: int) -> bool:
    """Do rows ``rows`` (excluding ``i``) imply row ``i``?"""
    ale, ble, aeq, beq = [], [], [], []
    for k in rows:
        if k == i:
            continue
        if p.senses[k] == EQ:
            aeq.append(p.a[k])
            beq.append(p.b[k])
        else:
            ale.append(p.a[k])
            ble.append(p.b[k])
    r = p.a[i]
    hi = _max_over(ale, ble, aeq, beq, r, p.dim)
    if hi is None or hi > p.b[i]:
        return False
    if p.senses[i] == EQ:
        lo = _max_over(ale, ble, aeq, beq, tuple(-c for c in r), p.dim)
        if lo is None or -lo < p.b[i]:
            return False
    return True


def _require_nonempty(p: HPoly):
    empty, _ = is_empty(p)
    if empty:
        raise ValueError("redundancy is only defined for a non-empty polyhedron")


def row_redundant(p: HPoly, row: int) -> bool:
    """Is ``row`` implied by the other rows of ``p``?  Equality rows must be implied in
    both directions."""
    _require_nonempty(p)
    if not 0 <= row < p.nrows:
        raise IndexError(row)
    return _row_implied(p, list(range(p.nrows)), row)


def remove_row_redundancy(p: HPoly) -> HPoly:
    _require_nonempty(p)
    alive = list(range(p.nrows))
    for i in range(p.nrows):
        if _row_implied(p, alive, i):
            alive.remove(i)
    return p.select_rows(alive)


@dataclass(frozen=True)
class ColumnRedundancy:
    """Dropped coordinates are ``reconstruction(kept coordinates)`` on every vertex."""

    dropped: str
    reconstruction: AffineMapSpec
    reduced: HPoly
    kept_positions: tuple
    dropped_positions: tuple

    def lift(self, kept_point) -> tuple:
        """Reassemble a full point from its kept coordinates."""
        full = [ZERO] * (len(self.kept_positions) + len(self.dropped_positions))
        for k, v in zip(self.kept_positions, kept_point):
            full[k] = v
        for k, v in zip(self.dropped_positions, self.reconstruction(kept_point)):
            full[k] = v
        return tuple(full)


def column_redundant(p: HPoly, drop: str) -> Optional[ColumnRedundancy]:
    """Can class ``drop`` be removed with its values recovered affinely?

    Tested on the vertex set: the kept parts of the vertices must be pairwise
    distinct, each must stay extreme after dropping, and the dropped parts
    must be an affine function of the kept parts.  ``reduced`` is ``p`` with
    that function substituted in.
    """
    if drop not in p.space.classes:
        raise ValueError(f"class {drop!r} not in polyhedron")
    if len(p.space.classes) < 2:
        raise ValueError("column redundancy needs at least one class to keep")
    bounded, ray = is_bounded(p)
    if not bounded:
        raise UnboundedError(ray)
    verts = enumerate_vertices(p).vertices
    if not verts:
        return None
    dpos = tuple(p.space.indices_of([drop]))
    kpos = tuple(k for k in range(p.dim) if k not in set(dpos))
    kept = [tuple(v[k] for k in kpos) for v in verts]
    gone = [tuple(v[k] for k in dpos) for v in verts]
    if len(set(kept)) != len(kept):
        return None
    for i, x in enumerate(kept):
        if in_convex_hull(kept[:i] + kept[i + 1:], x):
            return None
    design = [x + (ONE,) for x in kept]
    rows, offset = [], []
    for j in range(len(dpos)):
        sol = solve_linear(design, [g[j] for g in gone], len(kpos) + 1)
        if sol is None:
            return None
        coeffs = sol[0]
        rows.append(coeffs[:-1])
        offset.append(coeffs[-1])
    kspace = p.space.subspace(kpos)
    dspace = p.space.subspace(dpos)
    recon = AffineMapSpec(tuple(rows), tuple(offset), kspace, dspace)
    reduced = _substitute(p, kpos, dpos, recon)
    return ColumnRedundancy(drop, recon, reduced, kpos, dpos)


def _substitute(p: HPoly, kpos, dpos, recon: AffineMapSpec) -> HPoly:
    """Rows of ``p`` with the dropped coordinates replaced by ``recon``.

    The fit is affine and exact on every vertex, so it holds on all of ``p`` and
    the substituted system describes the projection onto the kept coordinates.
    """
    rows = []
    for r, s, rhs in p.rows():
        coeffs = [r[k] for k in kpos]
        for j, d in enumerate(dpos):
            if r[d]:
                coeffs = [c + r[d] * m for c, m in zip(coeffs, recon.matrix[j])]
                rhs = rhs - r[d] * recon.offset[j]
        if any(coeffs):
            rows.append((coeffs, s, rhs))
        elif rhs < 0 or (s == EQ and rhs != 0):
            raise AssertionError("substitution made a non-empty polytope infeasible")
    return HPoly.from_rows(recon.domain, rows)


@dataclass(frozen=True)
class RedundancyReport:
    redundant_rows: frozenset
    redundant_classes: dict = field(default_factory=dict)

    @property
    def minimal(self) -> bool:
        return not self.redundant_rows and not self.redundant_classes


def redundancy_report(p: HPoly, columns: bool = True) -> RedundancyReport:
    """Every individually redundant row, and (for bounded ``p``) every droppable class."""
    _require_nonempty(p)
    rows = frozenset(i for i in range(p.nrows) if _row_implied(p, list(range(p.nrows)), i))
    classes = {}
    if columns and len(p.space.classes) > 1 and is_bounded(p)[0]:
        for c in p.space.classes:
            found = column_redundant(p, c)
            if found is not None:
                classes[c] = found
    return RedundancyReport(rows, classes)
