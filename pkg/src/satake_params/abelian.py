"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are lists of rows of Python ints.  A finitely generated abelian
group is presented as ``Z^n / <relators>``; relators are stored as vectors
(the columns of the relation matrix).  Nothing in this module touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]

DEFAULT_CLOSURE_BOUND = 10**6


class ActionError(ValueError):
    """Raised when a lattice action does not respect the presentation."""


class ClosureError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# matrix helpers


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b)) if b else []
    inner = len(b)
    if inner == 0:
        ncols = 0 if not b else len(b[0])
        return [[0] * ncols for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    """Stack vectors as the columns of an ``nrows x len(cols)`` matrix."""
    return [[c[i] for c in cols] for i in range(nrows)]


def as_key(m: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


def determinant(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def inverse_unimodular(m: Sequence[Sequence[int]]) -> Matrix:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    inv = [row[n:] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# ---------------------------------------------------------------------------
# Smith and Hermite forms


@dataclass(frozen=True)
class SmithForm:
    divisors: tuple[int, ...]
    left: Matrix = field(repr=False)
    right: Matrix = field(repr=False)


def smith_normal_form(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    """Return divisors d_1 | d_2 | ... and unimodular U, V with U m V = diag(d).

    ``ncols`` is only needed for matrices with zero rows.
    """
    a = [list(map(int, row)) for row in m]
    r = len(a)
    c = len(a[0]) if a else (ncols or 0)
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        clean = False
            if not clean:
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, r) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, c) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    divisors = tuple(a[i][i] for i in range(min(r, c)))
    return SmithForm(divisors, U, V)


def hermite_rows(vectors: Iterable[Sequence[int]], dim: Optional[int] = None) -> list[Vector]:
    """Row-style Hermite normal form: the canonical basis of the span."""
    rows = [list(map(int, v)) for v in vectors]
    if not rows:
        return []
    n = len(rows[0]) if dim is None else dim
    out: list[list[int]] = []
    col = 0
    while rows and col < n:
        live = [row for row in rows if row[col]]
        dead = [row for row in rows if not row[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda row: abs(row[col]))
            p = live[0]
            nxt = [p]
            for row in live[1:]:
                q = row[col] // p[col]
                row = [x - q * y for x, y in zip(row, p)]
                (nxt if row[col] else dead).append(row)
            live = nxt
        p = live[0]
        if p[col] < 0:
            p = [-x for x in p]
        for k, prev in enumerate(out):
            q = prev[col] // p[col]
            if q:
                out[k] = [x - q * y for x, y in zip(prev, p)]
        out.append(p)
        rows = [row for row in dead if any(row)]
        col += 1
    return [tuple(row) for row in out]


def kernel_basis(m: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Z-basis (Hermite-canonical) of {x : m x = 0}."""
    if not m:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    snf = smith_normal_form(m, ncols)
    d = snf.divisors
    free = [j for j in range(ncols) if j >= len(d) or d[j] == 0]
    vecs = [tuple(snf.right[i][j] for i in range(ncols)) for j in free]
    return hermite_rows(vecs, ncols)


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> Optional[Vector]:
    """One integer solution of m x = b, or None."""
    if not m:
        return tuple([0] * ncols) if not any(b) else None
    snf = smith_normal_form(m, ncols)
    ub = matvec(snf.left, b)
    y = [0] * ncols
    for i, val in enumerate(ub):
        d = snf.divisors[i] if i < len(snf.divisors) else 0
        if d == 0:
            if val:
                return None
        else:
            if val % d:
                return None
            y[i] = val // d
    return matvec(snf.right, y)


def in_span(vectors: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    n = len(v)
    if not vectors:
        return not any(v)
    return solve_integer(columns_to_matrix(vectors, n), v, len(vectors)) is not None


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FinAbGroup:
    """``Z^ngens / span(relations)``.

    When the group arises as a subquotient ``span(embedding) / ambient_relations``
    of some ``Z^N``, ``embedding`` holds the ambient vector of each generator.
    """

    ngens: int
    relations: tuple[Vector, ...] = ()
    embedding: Optional[tuple[Vector, ...]] = None
    ambient_relations: Optional[tuple[Vector, ...]] = None

    @classmethod
    def free(cls, n: int) -> "FinAbGroup":
        basis = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(n, (), basis, ())

    @property
    def ambient_rank(self) -> int:
        if self.embedding:
            return len(self.embedding[0])
        return self.ngens

    def relation_matrix(self) -> Matrix:
        return columns_to_matrix(self.relations, self.ngens)

    @property
    def divisors(self) -> tuple[int, ...]:
        """Invariant factors d_1 | d_2 | ... with 1's dropped; free part as zeros."""
        if not self.relations:
            return (0,) * self.ngens
        d = smith_normal_form(self.relation_matrix(), len(self.relations)).divisors
        d = list(d) + [0] * (self.ngens - len(d))
        return tuple(x for x in d if x != 1)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(x for x in self.divisors if x != 0)

    @property
    def free_rank(self) -> int:
        return sum(1 for x in self.divisors if x == 0)

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.divisors

    def is_zero(self, x: Sequence[int]) -> bool:
        return in_span(self.relations, x)

    def equal(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.is_zero([a - b for a, b in zip(x, y)])

    def is_diagonal(self) -> bool:
        return all(sum(1 for t in r if t) <= 1 for r in self.relations)

    def reduce(self, x: Sequence[int]) -> Vector:
        """Canonical representative when the presentation is diagonal."""
        x = list(x)
        if self.is_diagonal():
            for r in self.relations:
                for i, t in enumerate(r):
                    if t:
                        x[i] %= abs(t)
        return tuple(x)

    def ambient(self, x: Sequence[int]) -> Vector:
        if self.embedding is None:
            return tuple(x)
        n = self.ambient_rank
        return tuple(sum(c * e[i] for c, e in zip(x, self.embedding)) for i in range(n))

    def coords(self, v: Sequence[int]) -> Optional[Vector]:
        """Coordinates of an ambient vector, or None if it is not in the group."""
        if self.embedding is None:
            return self.reduce(v)
        cols = list(self.embedding) + list(self.ambient_relations or ())
        sol = solve_integer(columns_to_matrix(cols, self.ambient_rank), v, len(cols))
        if sol is None:
            return None
        return self.reduce(sol[: self.ngens])

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "generators": [list(e) for e in self.embedding] if self.embedding is not None else None,
            "relations": [list(r) for r in self.relations],
        }


def subquotient(gens: Sequence[Sequence[int]], ambient_relations: Sequence[Sequence[int]],
                ambient_rank: int) -> FinAbGroup:
    """The subgroup of ``Z^N / ambient_relations`` generated by ``gens``."""
    gens = [tuple(g) for g in gens]
    rels_amb = [tuple(r) for r in ambient_relations if any(r)]
    m = len(gens)
    if rels_amb:
        big = columns_to_matrix(gens + [tuple(-x for x in r) for r in rels_amb], ambient_rank)
        ker = kernel_basis(big, m + len(rels_amb))
    else:
        big = columns_to_matrix(gens, ambient_rank)
        ker = kernel_basis(big, m) if gens else []
    rels = [k[:m] for k in ker]
    rels = [tuple(r) for r in hermite_rows(rels, m)] if rels else []
    return FinAbGroup(m, tuple(rels), tuple(gens), tuple(hermite_rows(rels_amb, ambient_rank)))


def simplify(group: FinAbGroup, candidates: Iterable[Sequence[int]] = ()) -> FinAbGroup:
    """Re-present a subquotient on a minimal generating set.

    Candidate ambient vectors are tried greedily first so that natural
    generators (basis vectors, orbit sums) survive; if they do not give a
    diagonal presentation, the Smith basis is used.
    """
    assert group.embedding is not None
    n = group.ambient_rank
    target = group.divisors
    arel = list(group.ambient_relations or ())
    chosen: list[Vector] = []
    for c in candidates:
        c = tuple(c)
        if not any(c) or group.coords(c) is None:
            continue
        if in_span(chosen + arel, c):
            continue
        chosen.append(c)
        if all(in_span(chosen + arel, g) for g in group.embedding):
            break
    if chosen and all(in_span(chosen + arel, g) for g in group.embedding):
        trial = subquotient(chosen, arel, n)
        if (trial.ngens == len(target) and trial.is_diagonal()
                and sorted(trial.divisors) == sorted(target)):
            return _order_generators(trial)

    m = group.ngens
    if not group.relations:
        return FinAbGroup(m, (), group.embedding, group.ambient_relations)
    rel = group.relation_matrix()
    snf = smith_normal_form(rel, len(group.relations))
    uinv = inverse_unimodular(snf.left)
    d = list(snf.divisors) + [0] * (m - len(snf.divisors))
    new_gens, new_rels = [], []
    keep = [i for i in range(m) if d[i] != 1]
    for k, i in enumerate(keep):
        col = [uinv[r][i] for r in range(m)]
        new_gens.append(tuple(sum(col[r] * group.embedding[r][t] for r in range(m))
                              for t in range(n)))
        if d[i] > 1:
            new_rels.append(tuple(d[i] * int(j == k) for j in range(len(keep))))
    return FinAbGroup(len(keep), tuple(new_rels), tuple(new_gens), group.ambient_relations)


def _order_generators(g: FinAbGroup) -> FinAbGroup:
    # free generators first, in the order chosen; torsion generators after
    tors = {}
    for r in g.relations:
        for i, t in enumerate(r):
            if t:
                tors[i] = abs(t)
    order = [i for i in range(g.ngens) if i not in tors] + [i for i in range(g.ngens) if i in tors]
    gens = tuple(g.embedding[i] for i in order)
    rels = tuple(tuple(tors[i] * int(j == k) for j in range(g.ngens))
                 for k, i in enumerate(order) if i in tors)
    return FinAbGroup(g.ngens, rels, gens, g.ambient_relations)


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class GroupActionOnLattice:
    """A finite group of lattice automorphisms, closed under products."""

    generators: tuple[tuple[Vector, ...], ...]
    elements: tuple[tuple[Vector, ...], ...]

    @classmethod
    def generate(cls, gens: Iterable[Sequence[Sequence[int]]], rank: int,
                 bound: int = DEFAULT_CLOSURE_BOUND) -> "GroupActionOnLattice":
        gens = tuple(as_key(g) for g in gens)
        for g in gens:
            if len(g) != rank or abs(determinant(g)) != 1:
                raise ActionError("group generators must be unimodular rank x rank matrices")
        ident = as_key(identity(rank))
        seen = {ident}
        order = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = as_key(matmul(g, x))
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        nxt.append(y)
                        if len(order) > bound:
                            raise ClosureError(f"group closure exceeded {bound} elements")
            frontier = nxt
        return cls(gens, tuple(order))

    @classmethod
    def trivial(cls, rank: int) -> "GroupActionOnLattice":
        return cls.generate([], rank)

    @property
    def rank(self) -> int:
        return len(self.elements[0])

    def __len__(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def preserves(self, group: FinAbGroup) -> bool:
        rels = list(group.relations)
        for g in self.generators:
            for r in rels:
                if not in_span(rels, matvec(g, r)):
                    return False
        return True

    def orbit(self, v: Sequence[int]) -> list[Vector]:
        out = []
        for g in self.elements:
            w = matvec(g, v)
            if w not in out:
                out.append(w)
        return out


def augmentation(action: GroupActionOnLattice) -> list[Vector]:
    """Vectors (g - 1) e_j for generators g; they span the augmentation submodule."""
    n = action.rank
    out = []
    for g in action.generators:
        for j in range(n):
            v = tuple(g[i][j] - int(i == j) for i in range(n))
            if any(v):
                out.append(v)
    return out


def coinvariants(lattice: FinAbGroup, action: GroupActionOnLattice) -> tuple[FinAbGroup, Matrix]:
    """``L / <g x - x>`` on the same generators, with the projection matrix."""
    if not action.preserves(lattice):
        raise ActionError("action does not preserve the relations")
    rels = list(lattice.relations) + augmentation(action)
    rels = hermite_rows(rels, lattice.ngens) if rels else []
    emb = lattice.embedding or tuple(tuple(int(i == j) for j in range(lattice.ngens))
                                     for i in range(lattice.ngens))
    amb_rel = None
    if lattice.embedding is not None:
        amb_rel = tuple(lattice.ambient(r) for r in rels)
    q = FinAbGroup(lattice.ngens, tuple(rels), emb, amb_rel)
    return q, identity(lattice.ngens)


def invariants(lattice: FinAbGroup, action: GroupActionOnLattice) -> FinAbGroup:
    """The fixed subgroup, presented in ambient coordinates of ``lattice``.

    For a free lattice this is the kernel of the stacked (g - 1) maps; with
    relations it is ``{x : g x - x in R}/R``.
    """
    if not action.preserves(lattice):
        raise ActionError("action does not preserve the relations")
    n = lattice.ngens
    rels = list(lattice.relations)
    gens = action.generators
    if not gens:
        sols = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    else:
        stacked = []
        for g in gens:
            for i in range(n):
                stacked.append([g[i][j] - int(i == j) for j in range(n)]
                               + [0] * (len(rels) * len(gens)))
        for k in range(len(gens)):
            for i in range(n):
                for t, r in enumerate(rels):
                    stacked[k * n + i][n + k * len(rels) + t] = -r[i]
        ker = kernel_basis(stacked, n + len(rels) * len(gens))
        sols = hermite_rows([v[:n] for v in ker], n)
    sub = subquotient(sols, rels, n)
    if lattice.embedding is None:
        return sub
    # push into the ambient lattice of ``lattice``
    emb = tuple(lattice.ambient(v) for v in sub.embedding)
    arel = tuple(lattice.ambient(r) for r in rels) + tuple(lattice.ambient_relations or ())
    return FinAbGroup(sub.ngens, sub.relations, emb,
                      tuple(hermite_rows(arel, lattice.ambient_rank)))


@dataclass(frozen=True)
class SurjectivityReport:
    surjective: bool
    kernel: tuple[Vector, ...]
    cokernel: tuple[int, ...]


def map_matrix(source: FinAbGroup, target: FinAbGroup, ambient_map=None) -> Matrix:
    """Matrix (target coords x source gens) of the map induced on ambient vectors."""
    cols = []
    for e in source.embedding:
        v = e if ambient_map is None else matvec(ambient_map, e)
        c = target.coords(v)
        if c is None:
            raise ActionError("ambient map does not land in the target group")
        cols.append(c)
    return columns_to_matrix(cols, target.ngens)


def is_surjective(f: Sequence[Sequence[int]], source: FinAbGroup, target: FinAbGroup) -> SurjectivityReport:
    """Decide surjectivity of ``f`` (target coords x source coords) and return kernel generators."""
    m, n = target.ngens, source.ngens
    cols = [tuple(f[i][j] for i in range(m)) for j in range(n)] + list(target.relations)
    if m == 0:
        return SurjectivityReport(True, tuple(hermite_rows(
            [tuple(int(i == j) for j in range(n)) for i in range(n)], n)), ())
    big = columns_to_matrix(cols, m)
    d = smith_normal_form(big, len(cols)).divisors
    d = list(d) + [0] * (m - len(d))
    coker = tuple(x for x in d if x != 1)
    # kernel: f y in span(target relations)
    negrel = [tuple(-x for x in r) for r in target.relations]
    big2 = columns_to_matrix([c for c in cols[:n]] + negrel, m)
    ker = kernel_basis(big2, n + len(negrel)) if n + len(negrel) else []
    kv = [k[:n] for k in ker]
    kv = [v for v in hermite_rows(kv, n)] if kv else []
    kv = [v for v in kv if not source.is_zero(v)]
    return SurjectivityReport(not coker, tuple(kv), coker)


def enumerate_box(rank: int, radius: int) -> Iterable[Vector]:
    return product(range(-radius, radius + 1), repeat=rank)
