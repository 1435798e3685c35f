"""Exact rational scalars, vectors and small dense linear algebra.

Scalars are :class:`fractions.Fraction` (arbitrary precision, always in
lowest terms with a positive denominator).  Vectors and matrices are plain
tuples so they are immutable and hashable.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q`` (q > 0).  Decimals like ``1.5`` are accepted too."""
    text = text.strip()
    if _RATIONAL_RE.match(text):
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None


def format_rational(r) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        # floats in source data are meant as decimals (e.g. 1.5), not binary approximations
        return Fraction(repr(value))
    return Fraction(value)


def vec(values: Iterable) -> Vector:
    return tuple(as_rational(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def rref(m: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the same shape as ``m``
    (zero rows at the bottom) and ``pivots`` lists the pivot columns.
    """
    rows = [list(map(as_rational, r)) for r in m]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        pr = [x * inv for x in rows[r]]
        rows[r] = pr
        nz = [j for j in range(c, n) if pr[j] != 0]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                ri = rows[i]
                for j in nz:
                    ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), len(pivots), pivots


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    return rref(m, ncols)[1]


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    r, rk, pivots = rref(m, n)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for i, pc in enumerate(pivots):
            x[pc] = -r[i][f]
        basis.append(tuple(x))
    return basis


def solve_linear(a: Sequence[Sequence], b: Sequence, ncols: int | None = None):
    """Solve ``a x = b`` exactly.

    Returns ``(x, nullspace_basis)`` for one particular solution (free
    variables set to zero), or ``None`` when the system is inconsistent.
    """
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} rows vs rhs of length {len(b)}")
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    aug = [tuple(row) + (b_i,) for row, b_i in zip(a, b)]
    r, rk, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [ZERO] * n
    for i, pc in enumerate(pivots):
        x[pc] = r[i][n]
    return tuple(x), nullspace(a, n)
