"""Based root data, their Weyl groups, duality and half sums of roots.

A datum lives on a lattice ``Z^rank`` (the character lattice of its own
torus); coroots are vectors in the dual lattice, paired by the dot product.
On the dual side we always take ``X*(T^) := X_*(T)`` with the same Galois
matrices, so the dual datum is obtained by swapping roots and coroots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _linalg
from .abelian import DEFAULT_CLOSURE_BOUND, ClosureError, identity, matmul

Vector = tuple[int, ...]


class RootDatumError(ValueError):
    pass


def pair(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class BasedRootDatum:
    rank: int
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    simple: tuple[int, ...]  # indices into ``roots``

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(tuple(int(x) for x in r) for r in self.roots))
        object.__setattr__(self, "coroots", tuple(tuple(int(x) for x in r) for r in self.coroots))
        object.__setattr__(self, "simple", tuple(int(i) for i in self.simple))
        self._validate()

    def _validate(self):
        if len(self.roots) != len(self.coroots):
            raise RootDatumError("roots and coroots must be paired")
        if len(set(self.roots)) != len(self.roots):
            raise RootDatumError("duplicate roots")
        for r, c in zip(self.roots, self.coroots):
            if len(r) != self.rank or len(c) != self.rank:
                raise RootDatumError("vector length does not match rank")
            if pair(r, c) != 2:
                raise RootDatumError(f"<{r}, {c}> != 2")
        index = self.root_index
        for r in self.roots:
            if tuple(-x for x in r) not in index:
                raise RootDatumError("root set not closed under negation")
        for a, ac in zip(self.roots, self.coroots):
            for r, c in zip(self.roots, self.coroots):
                k = pair(r, ac)
                image = tuple(x - k * y for x, y in zip(r, a))
                j = index.get(image)
                if j is None:
                    raise RootDatumError("a reflection does not preserve the roots")
                m = pair(a, c)
                if self.coroots[j] != tuple(x - m * y for x, y in zip(c, ac)):
                    raise RootDatumError("a reflection does not preserve the coroots")
        for i in self.simple:
            if not 0 <= i < len(self.roots):
                raise RootDatumError("simple index out of range")
        for coeffs in self.simple_coordinates:
            if coeffs is None:
                raise RootDatumError("a root is not in the span of the simple roots")
            if any(c.denominator != 1 for c in coeffs):
                raise RootDatumError("a root is not an integral combination of simple roots")
            if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
                raise RootDatumError("simple roots do not form a base")

    # -- basic data -------------------------------------------------------

    @cached_property
    def root_index(self) -> dict[Vector, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @property
    def simple_roots(self) -> list[Vector]:
        return [self.roots[i] for i in self.simple]

    @property
    def simple_coroots(self) -> list[Vector]:
        return [self.coroots[i] for i in self.simple]

    @cached_property
    def simple_coordinates(self) -> tuple:
        cols = self.simple_roots
        out = []
        for r in self.roots:
            sol = _linalg.solve(cols, r)
            out.append(sol)
        return tuple(out)

    def coefficients(self, i: int) -> Vector:
        return tuple(int(c) for c in self.simple_coordinates[i])

    @cached_property
    def positive(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.roots))
                     if all(c >= 0 for c in self.simple_coordinates[i]))

    @property
    def positive_roots(self) -> list[Vector]:
        return [self.roots[i] for i in self.positive]

    def height(self, i: int) -> int:
        return int(sum(self.simple_coordinates[i]))

    @cached_property
    def cartan_matrix(self) -> list[list[int]]:
        """``C[i][j] = <alpha_i, alpha_j^vee>``."""
        return [[pair(a, c) for c in self.simple_coroots] for a in self.simple_roots]

    @property
    def is_reduced(self) -> bool:
        return not any(tuple(2 * x for x in r) in self.root_index for r in self.roots)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple)

    def components(self) -> list[list[int]]:
        """Connected components of the Dynkin diagram, as positions in ``simple``."""
        n = len(self.simple)
        c = self.cartan_matrix
        seen, comps = set(), []
        for s in range(n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if j not in seen and c[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def component_is_type_a(self, comp: Sequence[int]) -> bool:
        c = self.cartan_matrix
        edges = 0
        for i in comp:
            deg = 0
            for j in comp:
                if i != j and c[i][j]:
                    if c[i][j] != -1:
                        return False
                    deg += 1
            if deg > 2:
                return False
            edges += deg
        return edges // 2 == len(comp) - 1

    def has_even_type_a_component(self) -> bool:
        return any(len(comp) % 2 == 0 and self.component_is_type_a(comp)
                   for comp in self.components())

    # -- reflections ---------------------------------------------------------

    def reflection_matrix(self, i: int) -> list[list[int]]:
        """Matrix of x -> x - <x, a^vee> a on the character lattice."""
        a, ac = self.roots[i], self.coroots[i]
        return [[int(r == c) - a[r] * ac[c] for c in range(self.rank)] for r in range(self.rank)]

    def permutation_of(self, m: Sequence[Sequence[int]]) -> Optional[tuple[int, ...]]:
        """Root permutation induced by a lattice automorphism, if it preserves the roots."""
        out = []
        for r in self.roots:
            img = tuple(sum(m[i][j] * r[j] for j in range(self.rank)) for i in range(self.rank))
            k = self.root_index.get(img)
            if k is None:
                return None
            out.append(k)
        return tuple(out)

    def preserves_base(self, m) -> bool:
        perm = self.permutation_of(m)
        return perm is not None and sorted(perm[i] for i in self.simple) == sorted(self.simple)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"rank": self.rank, "roots": [list(r) for r in self.roots],
                "coroots": [list(c) for c in self.coroots], "simple": list(self.simple)}

    @classmethod
    def from_json(cls, obj: dict) -> "BasedRootDatum":
        try:
            return cls(int(obj["rank"]), tuple(map(tuple, obj["roots"])),
                       tuple(map(tuple, obj["coroots"])), tuple(obj["simple"]))
        except (KeyError, TypeError) as exc:
            raise RootDatumError(f"malformed root datum: {exc}") from exc


# ---------------------------------------------------------------------------
# Weyl groups


@dataclass
class WeylGroup:
    """Weyl group as root permutations, with words and matrices on demand."""

    datum: BasedRootDatum
    perms: np.ndarray
    parent: list[int]
    letter: list[int]  # position in ``datum.simple``
    _index: dict = field(repr=False, default_factory=dict)
    _matrices: dict = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.parent)

    @property
    def order(self) -> int:
        return len(self.parent)

    def word(self, k: int) -> list[int]:
        out = []
        while self.parent[k] >= 0:
            out.append(self.letter[k])
            k = self.parent[k]
        return out  # leftmost letter applied last

    def matrix(self, k: int) -> tuple[Vector, ...]:
        m = self._matrices.get(k)
        if m is None:
            if self.parent[k] < 0:
                m = tuple(map(tuple, identity(self.datum.rank)))
            else:
                s = self.datum.reflection_matrix(self.datum.simple[self.letter[k]])
                m = tuple(map(tuple, matmul(s, self.matrix(self.parent[k]))))
            self._matrices[k] = m
        return m

    def matrices(self) -> list[tuple[Vector, ...]]:
        return [self.matrix(k) for k in range(len(self))]

    def index_of_permutation(self, perm) -> Optional[int]:
        return self._index.get(np.asarray(perm, dtype=self.perms.dtype).tobytes())

    def index_of_matrix(self, m) -> Optional[int]:
        perm = self.datum.permutation_of(m)
        if perm is None:
            return None
        k = self.index_of_permutation(perm)
        if k is not None and self.matrix(k) != tuple(map(tuple, m)):
            return None  # acts on roots like w but not on the whole lattice
        return k

    def contains_matrix(self, m) -> bool:
        return self.index_of_matrix(m) is not None

    def apply(self, k: int, v: Sequence) -> tuple:
        m = self.matrix(k)
        return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))


def weyl_group(d: BasedRootDatum, bound: int = DEFAULT_CLOSURE_BOUND) -> WeylGroup:
    nroots = len(d.roots)
    dtype = np.int16 if nroots < 2**15 else np.int32
    gens = []
    for i in d.simple:
        perm = d.permutation_of(d.reflection_matrix(i))
        gens.append(np.array(perm, dtype=dtype))
    start = np.arange(nroots, dtype=dtype)
    rows = [start]
    index = {start.tobytes(): 0}
    parent, letter = [-1], [-1]
    queue = deque([0])
    while queue:
        k = queue.popleft()
        p = rows[k]
        for g, s in enumerate(gens):
            q = s[p]
            key = q.tobytes()
            if key not in index:
                index[key] = len(rows)
                rows.append(q)
                parent.append(k)
                letter.append(g)
                queue.append(len(rows) - 1)
                if len(rows) > bound:
                    raise ClosureError(f"Weyl group closure exceeded {bound} elements")
    perms = np.array(rows, dtype=dtype) if nroots else np.zeros((1, 0), dtype=dtype)
    return WeylGroup(d, perms, parent, letter, index)


# ---------------------------------------------------------------------------
# derived data


def dual(d: BasedRootDatum) -> BasedRootDatum:
    return BasedRootDatum(d.rank, d.coroots, d.roots, d.simple)


@dataclass(frozen=True)
class Rho:
    twice: Vector  # 2 rho, an integral vector

    @property
    def value(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.twice)


def rho(d: BasedRootDatum) -> Rho:
    """Half the sum of the positive roots (stored doubled)."""
    total = [0] * d.rank
    for r in d.positive_roots:
        total = [x + y for x, y in zip(total, r)]
    return Rho(tuple(total))


def levi_subdatum(d: BasedRootDatum, subset: Iterable[int]) -> BasedRootDatum:
    """Roots supported on the given simple positions (indices into ``d.simple``)."""
    subset = sorted(set(subset))
    for s in subset:
        if not 0 <= s < len(d.simple):
            raise RootDatumError(f"simple position {s} out of range")
    keep = []
    for i, coeffs in enumerate(d.simple_coordinates):
        if all(c == 0 for j, c in enumerate(coeffs) if j not in subset):
            keep.append(i)
    roots = tuple(d.roots[i] for i in keep)
    coroots = tuple(d.coroots[i] for i in keep)
    simple = tuple(keep.index(d.simple[s]) for s in subset)
    return BasedRootDatum(d.rank, roots, coroots, simple)


# ---------------------------------------------------------------------------
# constructors


def torus(n: int) -> BasedRootDatum:
    return BasedRootDatum(n, (), (), ())


def gl(n: int) -> BasedRootDatum:
    """GL_n with roots e_i - e_j; self-dual."""
    roots, index = [], {}
    for i in range(n):
        for j in range(n):
            if i != j:
                v = tuple(int(k == i) - int(k == j) for k in range(n))
                index[(i, j)] = len(roots)
                roots.append(v)
    simple = tuple(index[(i, i + 1)] for i in range(n - 1))
    return BasedRootDatum(n, tuple(roots), tuple(roots), simple)


def _euclid(*entries):
    return tuple(Fraction(x) for x in entries)


def simple_roots_euclidean(kind: str, n: int) -> list[tuple[Fraction, ...]]:
    """Standard Euclidean realizations of the simple roots."""

    def e(i, dim):
        return tuple(Fraction(int(k == i)) for k in range(dim))

    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    kind = kind.upper()
    if kind == "A":
        return [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
    if kind == "B":
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [e(n - 1, n)]
    if kind == "C":
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [tuple(2 * x for x in e(n - 1, n))]
    if kind == "D":
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [add(e(n - 2, n), e(n - 1, n))]
    if kind == "G" and n == 2:
        return [_euclid(1, -1, 0), _euclid(-2, 1, 1)]
    if kind == "F" and n == 4:
        h = Fraction(1, 2)
        return [_euclid(0, 1, -1, 0), _euclid(0, 0, 1, -1), _euclid(0, 0, 0, 1), (h, -h, -h, -h)]
    if kind == "E" and n in (6, 7, 8):
        h = Fraction(1, 2)
        out = [(h, -h, -h, -h, -h, -h, -h, h), add(e(0, 8), e(1, 8))]
        for i in range(n - 2):
            out.append(sub(e(i + 1, 8), e(i, 8)))
        return out
    raise RootDatumError(f"unknown type {kind}{n}")


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    a = simple_roots_euclidean(kind, n)
    dot = _linalg.dot
    return [[int(2 * dot(ai, aj) / dot(aj, aj)) for aj in a] for ai in a]


def from_cartan(c: Sequence[Sequence[int]], form: str = "adjoint") -> BasedRootDatum:
    """Semisimple datum from a Cartan matrix ``C[i][j] = <a_i, a_j^vee>``.

    ``adjoint`` uses the root lattice, ``sc`` the weight lattice.
    """
    n = len(c)
    if form == "adjoint":
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        cosimple = [tuple(c[i][j] for i in range(n)) for j in range(n)]
    elif form in ("sc", "simply_connected"):
        simple = [tuple(c[i]) for i in range(n)]
        cosimple = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    else:
        raise RootDatumError(f"unknown form {form!r}")
    pairs = {(r, cr) for r, cr in zip(simple, cosimple)}
    frontier = list(pairs)
    while frontier:
        nxt = []
        for r, cr in frontier:
            for a, ac in zip(simple, cosimple):
                k, m = pair(r, ac), pair(a, cr)
                img = (tuple(x - k * y for x, y in zip(r, a)), tuple(x - m * y for x, y in zip(cr, ac)))
                if img not in pairs:
                    pairs.add(img)
                    nxt.append(img)
        frontier = nxt
    ordered = sorted(pairs, key=lambda p: (p[0] not in simple, p[0]))
    ordered = sorted(ordered, key=lambda p: simple.index(p[0]) if p[0] in simple else n)
    roots = tuple(p[0] for p in ordered)
    coroots = tuple(p[1] for p in ordered)
    return BasedRootDatum(n, roots, coroots, tuple(range(n)))


def semisimple(kind: str, n: int, form: str = "adjoint") -> BasedRootDatum:
    return from_cartan(cartan_matrix(kind, n), form)


def product(*data: BasedRootDatum) -> BasedRootDatum:
    rank = sum(d.rank for d in data)
    roots, coroots, simple = [], [], []
    offset = 0
    for d in data:
        pad = lambda v: (0,) * offset + tuple(v) + (0,) * (rank - offset - d.rank)
        base = len(roots)
        roots += [pad(r) for r in d.roots]
        coroots += [pad(c) for c in d.coroots]
        simple += [base + i for i in d.simple]
        offset += d.rank
    return BasedRootDatum(rank, tuple(roots), tuple(coroots), tuple(simple))
