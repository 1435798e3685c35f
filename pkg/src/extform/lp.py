"""Exact two-phase simplex over the rationals.

Variables are free; constraints are ``<=`` or ``=`` rows.  Bland's rule is
used for both entering and leaving choices, so the method terminates even on
the highly degenerate polytopes this package deals with.

Certificates use one multiplier per original row:

* ``Optimal``: ``dual`` satisfies ``dual @ A == c`` and ``dual @ b == optimum``
  with ``dual_i <= 0`` on ``<=`` rows.
* ``Infeasible``: ``dual`` is a Farkas witness ``u`` with ``u_i >= 0`` on
  ``<=`` rows, ``u @ A == 0`` and ``u @ b < 0``.  Equality rows carry a
  multiplier of either sign (the difference of the two halves of the row).
* ``Unbounded``: ``ray`` is a direction of the feasible set along which the
  objective decreases without bound.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from gmpy2 import mpq

from .core import EQ, LE, HPoly
from .rational import ZERO, Vector, dot, vec

_Q0 = mpq(0)
_Q1 = mpq(1)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _fracs(v) -> Vector:
    return tuple(_frac(q) for q in v)


class Status(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LinProgram:
    """Minimize ``objective @ x`` over ``constraints``."""

    objective: Vector
    constraints: HPoly

    def __post_init__(self):
        obj = vec(self.objective)
        if len(obj) != self.constraints.dim:
            raise ValueError(
                f"objective has {len(obj)} entries, constraints have {self.constraints.dim} columns")
        object.__setattr__(self, "objective", obj)


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    optimum: Optional[Fraction] = None
    point: Optional[Vector] = None
    dual: Optional[Vector] = None
    ray: Optional[Vector] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    @property
    def infeasible(self) -> bool:
        return self.status is Status.INFEASIBLE

    @property
    def unbounded(self) -> bool:
        return self.status is Status.UNBOUNDED


class _Tableau:
    """Dense tableau; row operations only touch nonzeros of the pivot row."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r: int, c: int, cost_rows):
        prow = self.rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(self.ncols):
                if prow[j]:
                    prow[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.ncols) if prow[j]]
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
                    self.rhs[i] -= f * prhs
        for cost in cost_rows:
            f = cost[0][c]
            if f:
                for j in nz:
                    cost[0][j] -= f * prow[j]
                cost[1] -= f * prhs
        self.basis[r] = c

    def run(self, cost, allowed, extra_costs=()):
        """Minimize; ``cost = [reduced_costs, -objective_value]``.

        Returns ``None`` at optimality or the entering column of an unbounded edge.
        """
        while True:
            d = cost[0]
            enter = next((j for j in allowed if d[j] < 0), None)
            if enter is None:
                return None
            best = None
            leave = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best, leave = ratio, i
            if leave is None:
                return enter
            self.pivot(leave, enter, (cost,) + tuple(extra_costs))


def solve_system(c: Sequence, a_le: Sequence, b_le: Sequence,
                 a_eq: Sequence = (), b_eq: Sequence = (), n: int | None = None) -> LpOutcome:
    """Minimize ``c @ x`` subject to ``a_le x <= b_le`` and ``a_eq x = b_eq`` (x free)."""
    c = vec(c)
    n = len(c) if n is None else n
    if len(c) != n:
        raise ValueError("objective length does not match variable count")
    # the kernel runs on gmpy2 rationals; results are converted back to Fraction
    rows_in = [(tuple(map(mpq, r)), mpq(rhs), LE) for r, rhs in zip(a_le, b_le)]
    rows_in += [(tuple(map(mpq, r)), mpq(rhs), EQ) for r, rhs in zip(a_eq, b_eq)]
    if len(a_le) != len(b_le) or len(a_eq) != len(b_eq):
        raise ValueError("dimension mismatch between constraint rows and rhs")
    for r, _, _ in rows_in:
        if len(r) != n:
            raise ValueError(f"constraint row of length {len(r)}, expected {n}")
    m = len(rows_in)

    # columns: x+ (n), x- (n), slacks (one per <= row), artificials (as needed)
    slack_of = {}
    for i, (_, _, s) in enumerate(rows_in):
        if s == LE:
            slack_of[i] = 2 * n + len(slack_of)
    nslack = len(slack_of)
    sign = [1] * m
    ident_col = [None] * m
    need_art = []
    for i, (_, rhs, s) in enumerate(rows_in):
        if rhs < 0:
            sign[i] = -1
        if s == LE and sign[i] == 1:
            ident_col[i] = slack_of[i]
        else:
            need_art.append(i)
    art_start = 2 * n + nslack
    for k, i in enumerate(need_art):
        ident_col[i] = art_start + k
    ncols = art_start + len(need_art)

    rows, rhs = [], []
    for i, (r, b, s) in enumerate(rows_in):
        sg = sign[i]
        row = [_Q0] * ncols
        for j, v in enumerate(r):
            if v:
                row[j] = sg * v
                row[n + j] = -sg * v
        if s == LE:
            row[slack_of[i]] = mpq(sg)
        if ident_col[i] >= art_start:
            row[ident_col[i]] = _Q1
        rows.append(row)
        rhs.append(sg * b)
    basis = list(ident_col)
    tab = _Tableau(rows, rhs, basis, ncols)
    structural = list(range(art_start))

    # phase I: minimize the sum of artificials
    if need_art:
        d1 = [_Q0] * ncols
        val1 = _Q0
        for i in need_art:
            for j in range(ncols):
                if rows[i][j]:
                    d1[j] -= rows[i][j]
            val1 -= rhs[i]
        for i in need_art:
            d1[ident_col[i]] = _Q0
        cost1 = [d1, val1]
        tab.run(cost1, structural)
        if -cost1[1] > 0:
            y = [(_Q1 if ident_col[i] >= art_start else _Q0) - cost1[0][ident_col[i]]
                 for i in range(m)]
            u = tuple(-sign[i] * y[i] for i in range(m))
            return LpOutcome(Status.INFEASIBLE, dual=_fracs(u))
        # drive zero-level artificials out of the basis where possible
        for r in range(m):
            if tab.basis[r] >= art_start:
                c_in = next((j for j in structural if tab.rows[r][j] != 0), None)
                if c_in is not None:
                    tab.pivot(r, c_in, ())

    # phase II
    cost_full = [_Q0] * ncols
    for j, v in enumerate(map(mpq, c)):
        cost_full[j] = v
        cost_full[n + j] = -v
    d2 = list(cost_full)
    val2 = _Q0
    for r in range(m):
        cb = cost_full[tab.basis[r]]
        if cb:
            row = tab.rows[r]
            for j in range(ncols):
                if row[j]:
                    d2[j] -= cb * row[j]
            val2 -= cb * tab.rhs[r]
    cost2 = [d2, val2]
    enter = tab.run(cost2, structural)

    x = [_Q0] * (2 * n)
    for r in range(m):
        bj = tab.basis[r]
        if bj < 2 * n:
            x[bj] = tab.rhs[r]
    point = _fracs(x[j] - x[n + j] for j in range(n))

    if enter is not None:
        dirn = [_Q0] * ncols
        dirn[enter] = _Q1
        for r in range(m):
            dirn[tab.basis[r]] = -tab.rows[r][enter]
        ray = _fracs(dirn[j] - dirn[n + j] for j in range(n))
        return LpOutcome(Status.UNBOUNDED, point=point, ray=ray)

    y = [-cost2[0][ident_col[i]] for i in range(m)]
    dual = _fracs(sign[i] * y[i] for i in range(m))
    return LpOutcome(Status.OPTIMAL, optimum=dot(c, point), point=point,
                     dual=dual)


def solve(lp: LinProgram) -> LpOutcome:
    """Solve ``lp``; multipliers in the outcome follow the row order of ``lp.constraints``."""
    p = lp.constraints
    le_idx = [i for i, s in enumerate(p.senses) if s == LE]
    eq_idx = [i for i, s in enumerate(p.senses) if s == EQ]
    out = solve_system(lp.objective, [p.a[i] for i in le_idx], [p.b[i] for i in le_idx],
                       [p.a[i] for i in eq_idx], [p.b[i] for i in eq_idx], n=p.dim)
    if out.dual is None:
        return out
    dual = [ZERO] * p.nrows
    for k, i in enumerate(le_idx + eq_idx):
        dual[i] = out.dual[k]
    return LpOutcome(out.status, out.optimum, out.point, tuple(dual), out.ray)


def feasible_point(p: HPoly) -> Optional[Vector]:
    out = solve(LinProgram((ZERO,) * p.dim, p))
    return out.point if out.optimal else None


def is_empty(p: HPoly):
    """``(True, farkas_witness)`` if ``p`` is empty, else ``(False, feasible_point)``."""
    out = solve(LinProgram((ZERO,) * p.dim, p))
    if out.infeasible:
        return True, out.dual
    return False, out.point


def check_farkas(p: HPoly, u: Sequence) -> bool:
    """True iff ``u`` certifies that ``p`` is empty."""
    if len(u) != p.nrows:
        return False
    for ui, s in zip(u, p.senses):
        if s == LE and ui < 0:
            return False
    for k in range(p.dim):
        if sum((ui * r[k] for ui, r in zip(u, p.a)), ZERO) != 0:
            return False
    return dot(u, p.b) < 0


def maximize(p: HPoly, objective: Sequence) -> LpOutcome:
    """Maximize ``objective @ x`` over ``p``; ``optimum`` is reported as the maximum."""
    out = solve(LinProgram(tuple(-Fraction(v) for v in objective), p))
    if out.optimal:
        return LpOutcome(out.status, -out.optimum, out.point,
                         tuple(-d for d in out.dual), None)
    return out
