"""Data types shared by every module: variable spaces, H/V polyhedra, affine maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .rational import Matrix, Vector, ZERO, as_rational, mat, vec

LE = "<="
EQ = "="


@dataclass(frozen=True)
class VarSpace:
    """Ordered variables, each a ``(class_label, index_tuple)`` pair.

    Class labels group variables that model the same aspect of a problem;
    two polyhedra are in independent spaces when they share no label.
    """

    variables: tuple

    def __post_init__(self):
        vs = tuple((str(c), tuple(i)) for c, i in self.variables)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate variable in VarSpace")
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "_pos", {v: k for k, v in enumerate(vs)})

    @classmethod
    def of(cls, *blocks: tuple[str, int]) -> "VarSpace":
        """Build from ``(label, count)`` blocks with indices ``(1,) .. (count,)``."""
        return cls(tuple((c, (k,)) for c, n in blocks for k in range(1, n + 1)))

    @classmethod
    def indexed(cls, label: str, indices: Iterable[tuple]) -> "VarSpace":
        return cls(tuple((label, tuple(i)) for i in indices))

    def __len__(self) -> int:
        return len(self.variables)

    def __add__(self, other: "VarSpace") -> "VarSpace":
        return VarSpace(self.variables + other.variables)

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def classes(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for c, _ in self.variables:
            seen.setdefault(c, None)
        return tuple(seen)

    def position(self, var: tuple) -> int:
        return self._pos[var]

    def __contains__(self, var) -> bool:
        return var in self._pos

    def indices_of(self, labels: Iterable[str]) -> list[int]:
        labels = set(labels)
        return [k for k, (c, _) in enumerate(self.variables) if c in labels]

    def subspace(self, positions: Sequence[int]) -> "VarSpace":
        return VarSpace(tuple(self.variables[k] for k in positions))

    def union(self, other: "VarSpace") -> "VarSpace":
        extra = tuple(v for v in other.variables if v not in self._pos)
        return VarSpace(self.variables + extra)

    def block_counts(self) -> list[tuple[str, int]]:
        """Consecutive ``(label, count)`` runs, in order."""
        out: list[list] = []
        for c, _ in self.variables:
            if out and out[-1][0] == c:
                out[-1][1] += 1
            else:
                out.append([c, 1])
        return [(c, n) for c, n in out]

    def names(self) -> list[str]:
        return [f"{c}[{','.join(map(str, i))}]" for c, i in self.variables]


@dataclass(frozen=True)
class HPoly:
    """``{x : a_i x <= b_i (sense '<='), a_i x = b_i (sense '=')}`` over ``space``."""

    space: VarSpace
    a: Matrix
    b: Vector
    senses: tuple = field(default=())

    def __post_init__(self):
        a = mat(self.a)
        b = vec(self.b)
        senses = tuple(self.senses) if self.senses else (LE,) * len(a)
        n = len(self.space)
        if len(a) != len(b) or len(b) != len(senses):
            raise ValueError("HPoly: rows of a, entries of b and senses must agree")
        if any(len(r) != n for r in a):
            raise ValueError(f"HPoly: every row needs {n} coefficients")
        if any(s not in (LE, EQ) for s in senses):
            raise ValueError(f"HPoly: senses must be {LE!r} or {EQ!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "senses", senses)

    @classmethod
    def from_rows(cls, space: VarSpace, rows: Iterable[tuple]) -> "HPoly":
        """Rows as ``(coeffs, op, rhs)`` with op in ``<=``, ``=``, ``>=``."""
        a, b, s = [], [], []
        for coeffs, op, rhs in rows:
            coeffs = vec(coeffs)
            rhs = as_rational(rhs)
            if op == ">=":
                coeffs, rhs, op = tuple(-c for c in coeffs), -rhs, LE
            elif op == "==":
                op = EQ
            a.append(coeffs)
            b.append(rhs)
            s.append(op)
        return cls(space, tuple(a), tuple(b), tuple(s))

    @property
    def dim(self) -> int:
        return len(self.space)

    @property
    def nrows(self) -> int:
        return len(self.b)

    def rows(self):
        return zip(self.a, self.senses, self.b)

    def split(self):
        """``(A_le, b_le, A_eq, b_eq)``."""
        ale, ble, aeq, beq = [], [], [], []
        for r, s, rhs in self.rows():
            if s == EQ:
                aeq.append(r)
                beq.append(rhs)
            else:
                ale.append(r)
                ble.append(rhs)
        return ale, ble, aeq, beq

    def inequality_form(self) -> tuple[list, list]:
        """All rows as ``<=`` (equalities expanded into two rows)."""
        a, b = [], []
        for r, s, rhs in self.rows():
            a.append(r)
            b.append(rhs)
            if s == EQ:
                a.append(tuple(-x for x in r))
                b.append(-rhs)
        return a, b

    def with_rows(self, rows: Iterable[tuple]) -> "HPoly":
        extra = HPoly.from_rows(self.space, rows)
        return HPoly(self.space, self.a + extra.a, self.b + extra.b, self.senses + extra.senses)

    def select_rows(self, keep: Iterable[int]) -> "HPoly":
        keep = list(keep)
        return HPoly(self.space, tuple(self.a[i] for i in keep),
                     tuple(self.b[i] for i in keep), tuple(self.senses[i] for i in keep))

    def embed(self, space: VarSpace) -> "HPoly":
        """Restate in a larger space, with zero coefficients on the new variables."""
        pos = [space.position(v) for v in self.space.variables]
        a = []
        for r in self.a:
            row = [ZERO] * len(space)
            for k, c in zip(pos, r):
                row[k] = c
            a.append(tuple(row))
        return HPoly(space, tuple(a), self.b, self.senses)

    def block(self, labels: Iterable[str]) -> Matrix:
        """Coefficient columns belonging to the given class labels."""
        cols = self.space.indices_of(labels)
        return tuple(tuple(r[k] for k in cols) for r in self.a)


@dataclass(frozen=True)
class VPoly:
    """Convex hull of finitely many points (no rays)."""

    space: VarSpace
    vertices: tuple

    def __post_init__(self):
        seen: dict = {}
        for v in self.vertices:
            v = vec(v)
            if len(v) != len(self.space):
                raise ValueError(f"VPoly: vertex {v} has wrong length")
            seen.setdefault(v, None)
        object.__setattr__(self, "vertices", tuple(seen))

    @property
    def dim(self) -> int:
        return len(self.space)


@dataclass(frozen=True)
class AffineMapSpec:
    """``y = matrix @ x + offset`` from ``domain`` coordinates to ``codomain`` coordinates."""

    matrix: Matrix
    offset: Vector
    domain: VarSpace
    codomain: VarSpace

    def __post_init__(self):
        m = mat(self.matrix)
        off = vec(self.offset) if self.offset else (ZERO,) * len(self.codomain)
        if len(m) != len(self.codomain) or any(len(r) != len(self.domain) for r in m):
            raise ValueError(
                f"AffineMapSpec: matrix must be {len(self.codomain)}x{len(self.domain)}")
        if len(off) != len(self.codomain):
            raise ValueError("AffineMapSpec: offset length must match codomain")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", off)

    def __call__(self, point: Sequence) -> Vector:
        return tuple(sum((c * x for c, x in zip(row, point) if c), o)
                     for row, o in zip(self.matrix, self.offset))

    @property
    def is_linear(self) -> bool:
        return all(o == 0 for o in self.offset)
