"""Projection of polyhedra onto a subset of their variables.

Equalities are used to substitute eliminated variables first; what remains
is removed by Fourier-Motzkin elimination with LP-based pruning of redundant
rows after every step.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import EQ, LE, AffineMapSpec, HPoly, VarSpace
from .lp import check_farkas, is_empty
from .polyhedron import normalize_row
from .rational import ZERO, Vector, vec
from .redundancy import redundant_le_rows

log = logging.getLogger(__name__)


class Kind(enum.Enum):
    POLYHEDRON = "Polyhedron"
    FULL_SPACE = "FullSpace"
    EMPTY = "Empty"


@dataclass(frozen=True)
class ProjectionResult:
    kind: Kind
    dim: int
    poly: Optional[HPoly] = None
    witness: Optional[Vector] = None

    def __str__(self):
        if self.kind is Kind.FULL_SPACE:
            return f"FullSpace({self.dim})"
        if self.kind is Kind.EMPTY:
            return "Empty"
        return f"Polyhedron({self.poly.nrows} rows in dimension {self.dim})"

    @property
    def is_full_space(self) -> bool:
        return self.kind is Kind.FULL_SPACE

    @property
    def is_empty(self) -> bool:
        return self.kind is Kind.EMPTY

    def as_hpoly(self, space: VarSpace) -> HPoly:
        """The result as an H-polyhedron over ``space`` (FullSpace has no rows;
        Empty is the single row ``0 <= -1``)."""
        if self.kind is Kind.POLYHEDRON:
            return self.poly
        if self.kind is Kind.FULL_SPACE:
            return HPoly(space, (), (), ())
        return HPoly(space, ((ZERO,) * len(space),), (Fraction(-1),), (LE,))


def resolve_keep(space: VarSpace, keep) -> list[int]:
    """Positions selected by class labels (``str``) or positions (``int``)."""
    if isinstance(keep, str):
        keep = [keep]
    keep = list(keep)
    if not keep:
        raise ValueError("keep must name at least one class or variable")
    labels = [k for k in keep if isinstance(k, str)]
    unknown = set(labels) - set(space.classes)
    if unknown:
        raise ValueError(f"unknown classes {sorted(unknown)}")
    pos = set(space.indices_of(labels))
    for k in keep:
        if not isinstance(k, str):
            if not 0 <= k < len(space):
                raise ValueError(f"variable index {k} out of range")
            pos.add(k)
    return sorted(pos)


def _canonical(rows):
    """Normalize, drop trivially true rows, keep the tightest rhs per direction."""
    best = {}
    for coeffs, rhs in rows:
        c, r = normalize_row(coeffs, rhs)
        if all(x == 0 for x in c):
            if r < 0:
                return None
            continue
        if c not in best or r < best[c]:
            best[c] = r
    return [(c, best[c]) for c in sorted(best)]


def _substitute_equalities(ineqs, eqs, elim):
    """Use equalities to remove eliminated variables; returns (ineqs, eqs, remaining elim)."""
    eqs = [(list(c), r) for c, r in eqs]
    ineqs = [(list(c), r) for c, r in ineqs]
    remaining = []
    for v in elim:
        k = next((i for i, (c, _) in enumerate(eqs) if c[v] != 0), None)
        if k is None:
            remaining.append(v)
            continue
        pc, pr = eqs.pop(k)
        piv = pc[v]
        for group in (eqs, ineqs):
            for idx, (c, r) in enumerate(group):
                f = c[v]
                if f:
                    f = f / piv
                    group[idx] = ([a - f * b for a, b in zip(c, pc)], r - f * pr)
    return ineqs, eqs, remaining


def _fm_step(ineqs, v):
    pos = [(c, r) for c, r in ineqs if c[v] > 0]
    neg = [(c, r) for c, r in ineqs if c[v] < 0]
    out = [(c, r) for c, r in ineqs if c[v] == 0]
    for cp, rp in pos:
        for cn, rn in neg:
            fp, fn = cp[v], -cn[v]
            out.append(([fn * a + fp * b for a, b in zip(cp, cn)], fn * rp + fp * rn))
    return out


def project(u: HPoly, keep, prune: bool = True) -> ProjectionResult:
    """``{x : exists w, (x, w) in u}`` for the variables selected by ``keep``.

    ``keep`` is a class label, an iterable of labels, or variable positions.
    """
    kpos = resolve_keep(u.space, keep)
    kspace = u.space.subspace(kpos)
    empty, cert = is_empty(u)
    if empty:
        return ProjectionResult(Kind.EMPTY, len(kpos), witness=cert)
    n = u.dim
    elim = [j for j in range(n) if j not in set(kpos)]
    ineqs = [(r, b) for r, s, b in u.rows() if s == LE]
    eqs = [(r, b) for r, s, b in u.rows() if s == EQ]
    ineqs, eqs, elim = _substitute_equalities(ineqs, eqs, elim)
    ineqs = _canonical(ineqs)
    while elim:
        def cost(v):
            p = sum(1 for c, _ in ineqs if c[v] > 0)
            q = sum(1 for c, _ in ineqs if c[v] < 0)
            return (p * q - p - q, v)
        v = min(elim, key=cost)
        elim.remove(v)
        ineqs = _canonical(_fm_step(ineqs, v))
        if ineqs is None:
            raise AssertionError("projection of a non-empty polyhedron became empty")
        if prune and len(ineqs) > 1:
            ineqs = _prune(ineqs, eqs, n)
        log.debug("eliminated column %d: %d rows", v, len(ineqs))
    rows = [(tuple(c[k] for k in kpos), LE, r) for c, r in ineqs]
    eq_rows = []
    for c, r in eqs:
        cc, rr = normalize_row([c[k] for k in kpos], r, equality=True)
        if any(x != 0 for x in cc):
            eq_rows.append((cc, EQ, rr))
        elif rr != 0:
            raise AssertionError("inconsistent equality survived the emptiness test")
    eq_rows = sorted(set(eq_rows))
    rows = eq_rows + rows
    if not rows:
        return ProjectionResult(Kind.FULL_SPACE, len(kpos))
    return ProjectionResult(Kind.POLYHEDRON, len(kpos), poly=HPoly.from_rows(kspace, rows))


def _prune(ineqs, eqs, n):
    cols = [j for j in range(n) if any(c[j] for c, _ in ineqs) or any(c[j] for c, _ in eqs)]
    a_le = [tuple(c[j] for j in cols) for c, _ in ineqs]
    b_le = [r for _, r in ineqs]
    a_eq = [tuple(c[j] for j in cols) for c, _ in eqs]
    dropped = set(redundant_le_rows(a_le, b_le, a_eq, [r for _, r in eqs], len(cols)))
    return [row for i, row in enumerate(ineqs) if i not in dropped]


def project_degenerate_case(u: HPoly, keep) -> ProjectionResult:
    """Projection when the kept variables have an all-zero coefficient block.

    The answer is then either the whole kept space or empty, the latter with a
    Farkas witness ``y >= 0`` (free on equality rows) combining the rows into
    ``0 <= negative``.
    """
    kpos = resolve_keep(u.space, keep)
    if any(r[k] != 0 for r in u.a for k in kpos):
        raise ValueError("kept variables have nonzero coefficients; use project()")
    wpos = [j for j in range(u.dim) if j not in set(kpos)]
    w_sys = HPoly(u.space.subspace(wpos), tuple(tuple(r[j] for j in wpos) for r in u.a),
                  u.b, u.senses)
    empty, cert = is_empty(w_sys)
    if empty:
        assert check_farkas(u, cert)
        return ProjectionResult(Kind.EMPTY, len(kpos), witness=cert)
    return ProjectionResult(Kind.FULL_SPACE, len(kpos))


def pushforward_objective(alpha, m: AffineMapSpec):
    """Rewrite ``alpha . x`` with ``x = C y + b`` as ``(C^T alpha) . y + alpha . b``.

    ``C`` must be entrywise nonnegative.
    """
    alpha = vec(alpha)
    if len(alpha) != len(m.codomain):
        raise ValueError("alpha must have one entry per codomain coordinate")
    if any(c < 0 for row in m.matrix for c in row):
        raise ValueError("map matrix has a negative entry; only C >= 0 is supported")
    q = len(m.domain)
    coeffs = tuple(sum((alpha[i] * m.matrix[i][j] for i in range(len(alpha))), ZERO)
                   for j in range(q))
    const = sum((a * b for a, b in zip(alpha, m.offset)), ZERO)
    return coeffs, const
