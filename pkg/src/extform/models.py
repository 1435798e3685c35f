"""Generators for the TSP and minimum-spanning-tree polytope families.

Variable ordering is fixed and documented per generator:

* arcs ``x[i,j]`` (``i != j``) lexicographically;
* assignment ``w[i,t]`` for city ``i = 2..n`` (outer) and time ``t = 1..n-1``;
* edges of ``K_n`` as ``(i, j)`` with ``i < j``, lexicographically;
* Martin's ``z[k,i,j]`` with ``k`` outer, then edges, then the two orientations
  ``(i,j)`` and ``(j,i)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import HPoly, VarSpace, VPoly
from .lp import LinProgram
from .rational import ONE, ZERO, vec


def _check_n(n: int, lo: int, hi: Optional[int]):
    if not isinstance(n, int) or n < lo or (hi is not None and n > hi):
        rng = f"{lo} <= n <= {hi}" if hi is not None else f"n >= {lo}"
        raise ValueError(f"n={n!r} out of range ({rng})")


# ---------------------------------------------------------------- TSP

def arcs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


@dataclass(frozen=True)
class TourVector:
    """A directed Hamiltonian cycle on cities ``1..n`` given by its arc set."""

    n: int
    arcs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in self.arcs))
        if len(self.arcs) != self.n:
            raise ValueError("a tour has exactly n arcs")
        succ = {}
        preds = set()
        for i, j in self.arcs:
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"bad arc {(i, j)}")
            if i in succ or j in preds:
                raise ValueError("every city needs in-degree 1 and out-degree 1")
            succ[i] = j
            preds.add(j)
        if len(succ) != self.n:
            raise ValueError("every city needs in-degree 1 and out-degree 1")
        if len(self.order()) != self.n:
            raise ValueError("arcs form more than one cycle")

    def order(self) -> list[int]:
        """Visit order starting from city 1."""
        succ = dict(self.arcs)
        seq = [1]
        while True:
            nxt = succ[seq[-1]]
            if nxt == 1 or nxt in seq:
                break
            seq.append(nxt)
        return seq

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "TourVector":
        n = len(order)
        return cls(n, frozenset((order[k], order[(k + 1) % n]) for k in range(n)))

    def vector(self) -> tuple:
        return tuple(ONE if a in self.arcs else ZERO for a in arcs(self.n))


@dataclass(frozen=True)
class AssignmentVector:
    """``w[i][t] = 1`` iff city ``i + 2`` is visited at time ``t + 1``."""

    n: int
    w: tuple

    def __post_init__(self):
        w = tuple(tuple(int(v) for v in row) for row in self.w)
        m = self.n - 1
        if len(w) != m or any(len(r) != m for r in w):
            raise ValueError(f"assignment matrix must be {m}x{m}")
        if any(v not in (0, 1) for r in w for v in r):
            raise ValueError("assignment entries must be 0/1")
        if any(sum(r) != 1 for r in w) or any(sum(col) != 1 for col in zip(*w)):
            raise ValueError("rows and columns of an assignment must sum to 1")
        object.__setattr__(self, "w", w)

    def vector(self) -> tuple:
        return tuple(vec(v for row in self.w for v in row))

    @classmethod
    def from_vector(cls, n: int, x: Sequence) -> "AssignmentVector":
        m = n - 1
        return cls(n, tuple(tuple(x[i * m + t] for t in range(m)) for i in range(m)))


def tour_to_assignment(t: TourVector) -> AssignmentVector:
    order = t.order()
    m = t.n - 1
    w = [[0] * m for _ in range(m)]
    for time, city in enumerate(order[1:], start=1):
        w[city - 2][time - 1] = 1
    return AssignmentVector(t.n, tuple(map(tuple, w)))


def assignment_to_tour(a: AssignmentVector) -> TourVector:
    m = a.n - 1
    order = [1] + [0] * m
    for i in range(m):
        for t in range(m):
            if a.w[i][t]:
                order[t + 1] = i + 2
    return TourVector.from_order(order)


def all_tours(n: int) -> list[TourVector]:
    """Distinct directed tours, city 1 fixed as start: ``(n-1)!`` of them."""
    return [TourVector.from_order((1,) + perm) for perm in itertools.permutations(range(2, n + 1))]


def gen_standard_tsp(n: int) -> VPoly:
    _check_n(n, 3, 6)
    space = VarSpace.indexed("x", arcs(n))
    return VPoly(space, tuple(t.vector() for t in all_tours(n)))


def assignment_space(n: int) -> VarSpace:
    return VarSpace.indexed("w", [(i, t) for i in range(2, n + 1) for t in range(1, n)])


def gen_alternate_tsp(n: int) -> HPoly:
    """Assignment polytope over ``(n-1)^2`` variables ``w[i,t]``."""
    _check_n(n, 3, None)
    space = assignment_space(n)
    m = n - 1
    rows = []
    for i in range(m):
        rows.append(([ONE if k // m == i else ZERO for k in range(m * m)], "=", 1))
    for t in range(m):
        rows.append(([ONE if k % m == t else ZERO for k in range(m * m)], "=", 1))
    for k in range(m * m):
        rows.append(([-ONE if j == k else ZERO for j in range(m * m)], "<=", 0))
    return HPoly.from_rows(space, rows)


# ---------------------------------------------------------------- MSTP

def edges(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, n + 1), 2))


def _costs(n: int, costs) -> tuple:
    e = edges(n)
    if costs is None:
        return (ONE,) * len(e)
    costs = vec(costs)
    if len(costs) != len(e):
        raise ValueError(f"need {len(e)} edge costs")
    return costs


def gen_mst_edmonds(n: int, costs=None):
    """Subtour-elimination (spanning tree) polytope and its LP.

    Subsets ``S`` range over vertex sets with ``2 <= |S| <= n-1``.
    """
    _check_n(n, 3, 5)
    e = edges(n)
    space = VarSpace.indexed("x", e)
    rows = [([ONE] * len(e), "=", n - 1)]
    for size in range(2, n):
        for s in itertools.combinations(range(1, n + 1), size):
            s = set(s)
            rows.append(([ONE if (i in s and j in s) else ZERO for i, j in e], "<=", size - 1))
    for k in range(len(e)):
        rows.append(([-ONE if j == k else ZERO for j in range(len(e))], "<=", 0))
    p = HPoly.from_rows(space, rows)
    return p, LinProgram(_costs(n, costs), p)


def martin_z_vars(n: int) -> list[tuple[int, int, int]]:
    out = []
    for k in range(1, n + 1):
        for i, j in edges(n):
            out.append((k, i, j))
            out.append((k, j, i))
    return out


def _degree_rows(n, zpos, width, offset):
    rows = []
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if i == k:
                continue
            c = [ZERO] * width
            for j in range(1, n + 1):
                if j != i:
                    c[offset + zpos[(k, i, j)]] = ONE
            rows.append((c, "<=", 1))
    for k in range(1, n + 1):
        c = [ZERO] * width
        for j in range(1, n + 1):
            if j != k:
                c[offset + zpos[(k, k, j)]] = ONE
        rows.append((c, "<=", 0))
    return rows


def gen_mst_martin(n: int) -> HPoly:
    """Martin's polynomial-size spanning tree formulation over classes ``x`` and ``z``."""
    _check_n(n, 3, 5)
    e = edges(n)
    z = martin_z_vars(n)
    space = VarSpace.indexed("x", e) + VarSpace.indexed("z", z)
    ne, width = len(e), len(e) + len(z)
    zpos = {v: k for k, v in enumerate(z)}
    rows = [([ONE] * ne + [ZERO] * len(z), "=", n - 1)]
    for k in range(1, n + 1):
        for ei, (i, j) in enumerate(e):
            c = [ZERO] * width
            c[ne + zpos[(k, i, j)]] = ONE
            c[ne + zpos[(k, j, i)]] = ONE
            c[ei] = -ONE
            rows.append((c, "=", 0))
    rows += _degree_rows(n, zpos, width, ne)
    for k in range(width):
        rows.append(([-ONE if j == k else ZERO for j in range(width)], "<=", 0))
    return HPoly.from_rows(space, rows)


def root_of(e: tuple[int, int], n: int) -> int:
    """Smallest vertex not incident to edge ``e``."""
    return next(r for r in range(1, n + 1) if r not in e)


def martin_substitution(n: int) -> dict:
    """``x[i,j] = z[r,i,j] + z[r,j,i]`` with ``r`` the smallest non-incident vertex."""
    return {e: ((root_of(e, n),) + e, (root_of(e, n), e[1], e[0])) for e in edges(n)}


def gen_mst_martin_reduced(n: int, costs=None):
    """Martin's model with every ``x[e]`` replaced by ``z[r_e,i,j] + z[r_e,j,i]``.

    Linking rows with ``k = r_e`` become ``0 = 0`` and are left out.
    Returns the polytope (class ``z`` only) and the LP with the substituted costs.
    """
    _check_n(n, 3, 5)
    e = edges(n)
    z = martin_z_vars(n)
    zpos = {v: k for k, v in enumerate(z)}
    space = VarSpace.indexed("z", z)
    width = len(z)
    sub = martin_substitution(n)

    def x_of(edge):
        c = [ZERO] * width
        for v in sub[edge]:
            c[zpos[v]] += ONE
        return c

    total = [ZERO] * width
    for edge in e:
        total = [a + b for a, b in zip(total, x_of(edge))]
    rows = [(total, "=", n - 1)]
    for k in range(1, n + 1):
        for (i, j) in e:
            if k == root_of((i, j), n):
                continue
            c = [-v for v in x_of((i, j))]
            c[zpos[(k, i, j)]] += ONE
            c[zpos[(k, j, i)]] += ONE
            rows.append((c, "=", 0))
    rows += _degree_rows(n, zpos, width, 0)
    for k in range(width):
        rows.append(([-ONE if j == k else ZERO for j in range(width)], "<=", 0))
    p = HPoly.from_rows(space, rows)
    cost = _costs(n, costs)
    obj = [ZERO] * width
    for c_e, edge in zip(cost, e):
        for v in sub[edge]:
            obj[zpos[v]] += c_e
    return p, LinProgram(tuple(obj), p)


def spanning_trees(n: int) -> list[frozenset]:
    """Brute force: every (n-1)-edge subset of ``K_n`` that is acyclic."""
    out = []
    for subset in itertools.combinations(edges(n), n - 1):
        parent = list(range(n + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for i, j in subset:
            ri, rj = find(i), find(j)
            if ri == rj:
                ok = False
                break
            parent[ri] = rj
        if ok:
            out.append(frozenset(subset))
    return out


def tree_vector(n: int, tree: frozenset) -> tuple:
    return tuple(ONE if e in tree else ZERO for e in edges(n))
