"""Folding a root system along a finite group of diagram automorphisms.

For a finite group I of lattice automorphisms preserving the roots and the
base, every root is replaced by the average of its I-orbit.  The averages
form a possibly non-reduced root system whose Weyl group is the centralizer
of I in the original Weyl group.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Optional, Sequence

import numpy as np

from . import _linalg
from .abelian import (
    DEFAULT_CLOSURE_BOUND,
    ActionError,
    ClosureError,
    FinAbGroup,
    GroupActionOnLattice,
    as_key,
    coinvariants,
    determinant,
    matmul,
)
from .rootdata import BasedRootDatum, WeylGroup

QVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class GaloisAction:
    """Inertia generators and a Frobenius, all as integer matrices on the lattice."""

    inertia_gens: tuple = ()
    frobenius: Optional[tuple] = None
    rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "inertia_gens", tuple(as_key(g) for g in self.inertia_gens))
        if self.frobenius is None:
            object.__setattr__(self, "frobenius", as_key([[int(i == j) for j in range(self.rank)]
                                                          for i in range(self.rank)]))
        else:
            object.__setattr__(self, "frobenius", as_key(self.frobenius))
        if self.rank == 0 and self.frobenius:
            object.__setattr__(self, "rank", len(self.frobenius))

    @classmethod
    def trivial(cls, rank: int) -> "GaloisAction":
        return cls((), None, rank)

    @cached_property
    def inertia(self) -> GroupActionOnLattice:
        return GroupActionOnLattice.generate(self.inertia_gens, self.rank)

    @cached_property
    def gamma(self) -> GroupActionOnLattice:
        """The finite group generated by inertia and Frobenius."""
        return GroupActionOnLattice.generate(self.inertia_gens + (self.frobenius,), self.rank)

    @cached_property
    def frobenius_action(self) -> GroupActionOnLattice:
        return GroupActionOnLattice.generate((self.frobenius,), self.rank)

    def is_trivial(self) -> bool:
        return self.gamma.is_trivial()

    def validate(self, d: BasedRootDatum) -> None:
        if d.rank != self.rank:
            raise ActionError("action rank does not match the datum")
        for g in self.inertia_gens + (self.frobenius,):
            if abs(determinant(g)) != 1:
                raise ActionError("Galois matrices must be unimodular")
            if not d.preserves_base(g):
                raise ActionError("action does not preserve the roots and the base")
        inertia = set(self.inertia.elements)
        finv = _integer_inverse(self.frobenius)
        for g in self.inertia_gens:
            if as_key(matmul(matmul(self.frobenius, g), finv)) not in inertia:
                raise ActionError("Frobenius does not normalize inertia")

    def to_json(self) -> dict:
        return {"inertia": [list(map(list, g)) for g in self.inertia_gens],
                "frobenius": [list(r) for r in self.frobenius]}

    @classmethod
    def from_json(cls, obj: Optional[dict], rank: int) -> "GaloisAction":
        obj = obj or {}
        try:
            inertia = tuple(obj.get("inertia", ()))
            frob = obj.get("frobenius")
            return cls(inertia, frob, rank)
        except (TypeError, ValueError) as exc:
            raise ActionError(f"malformed action: {exc}") from exc


def _integer_inverse(m):
    from .abelian import inverse_unimodular
    return as_key(inverse_unimodular(m))


def permutation_action(d: BasedRootDatum, g) -> np.ndarray:
    perm = d.permutation_of(g)
    if perm is None:
        raise ActionError("matrix does not preserve the roots")
    return np.array(perm, dtype=np.int32)


# ---------------------------------------------------------------------------
# folding


@dataclass(frozen=True)
class OrbitBlock:
    representative: int  # root index
    members: tuple[int, ...]
    block_type: str  # "Type1" or "Type2"
    tie_broken: bool = False


@dataclass
class FoldedSystem:
    datum: BasedRootDatum
    psi_I: list[QVector]
    delta_I: list[QVector]
    reduced_long: list[QVector]
    reduced_short: list[QVector]
    blocks: list[OrbitBlock]
    bar: list[int]  # index into psi_I of the average of each root
    form: list[list[Fraction]] = field(repr=False)
    _form_cache: dict = field(default_factory=dict, repr=False)

    def pairing(self, x: Sequence, y: Sequence) -> Fraction:
        key = tuple(y)
        by = self._form_cache.get(key)
        if by is None:
            by = tuple(sum(row[j] * y[j] for j in range(len(y)) if y[j]) for row in self.form)
            self._form_cache[key] = by
        return sum(a * b for a, b in zip(x, by) if a)

    def cartan_integer(self, b: Sequence, g: Sequence) -> Fraction:
        """``<b, g^vee>`` for the induced coroot of ``g``."""
        return 2 * self.pairing(b, g) / self.pairing(g, g)

    def reflect(self, g: Sequence, x: Sequence) -> QVector:
        k = self.cartan_integer(x, g)
        return tuple(a - k * b for a, b in zip(x, g))

    def coordinates(self, v: Sequence) -> Optional[tuple[Fraction, ...]]:
        return _linalg.solve(self.delta_I, v)

    @cached_property
    def positive(self) -> list[int]:
        return [i for i, v in enumerate(self.psi_I)
                if all(c >= 0 for c in self.coordinates(v))]

    @property
    def is_reduced(self) -> bool:
        s = set(self.psi_I)
        return not any(tuple(2 * x for x in v) in s for v in self.psi_I)

    def check_root_system(self) -> None:
        s = set(self.psi_I)
        for g in self.psi_I:
            for b in self.psi_I:
                k = self.cartan_integer(b, g)
                if k.denominator != 1:
                    raise AssertionError(f"non-integral Cartan number {k}")
                if self.reflect(g, b) not in s:
                    raise AssertionError("folded roots not closed under reflections")
        for v in self.psi_I:
            c = self.coordinates(v)
            if c is None or any(x.denominator != 1 for x in c):
                raise AssertionError("folded base does not span integrally")
            if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
                raise AssertionError("folded base is not a base")

    def weyl_permutations(self, bound: int = DEFAULT_CLOSURE_BOUND) -> set[tuple[int, ...]]:
        """W(Psi^I) as permutations of ``psi_I`` generated by simple reflections."""
        index = {v: i for i, v in enumerate(self.psi_I)}
        gens = []
        for a in self.delta_I:
            gens.append(tuple(index[self.reflect(a, v)] for v in self.psi_I))
        start = tuple(range(len(self.psi_I)))
        seen = {start}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
                    if len(seen) > bound:
                        raise ClosureError("folded Weyl group closure exceeded bound")
        return seen

    def simple_coefficients(self) -> list[tuple[int, ...]]:
        return sorted(tuple(int(c) for c in self.coordinates(self.psi_I[i])) for i in self.positive)

    def to_json(self) -> dict:
        d = self.datum

        def vec(v):
            return [str(x) for x in v]

        return {
            "psi_I": [vec(v) for v in self.psi_I],
            "delta_I": [vec(v) for v in self.delta_I],
            "reduced_long": [vec(v) for v in self.reduced_long],
            "reduced_short": [vec(v) for v in self.reduced_short],
            "reduced": self.is_reduced,
            "blocks": [{
                "representative": list(d.roots[b.representative]),
                "members": [list(d.roots[m]) for m in b.members],
                "type": b.block_type,
                "tie_broken_lexicographically": b.tie_broken,
            } for b in self.blocks],
        }


def average(vectors: Sequence[Sequence[int]]) -> QVector:
    n = len(vectors)
    return tuple(Fraction(sum(col), n) for col in zip(*vectors))


def _ray_key(v: QVector) -> QVector:
    lead = next(abs(x) for x in v if x)
    return tuple(x / lead for x in v)


def fold(d: BasedRootDatum, action: GaloisAction, group: Optional[GroupActionOnLattice] = None) -> FoldedSystem:
    """Fold ``d`` along the inertia group of ``action`` (or along ``group``)."""
    gens = group.generators if group is not None else action.inertia_gens
    for g in gens:
        if not d.preserves_base(g):
            raise ActionError("action does not preserve the roots and the base")
    group = group or action.inertia
    perms = [d.permutation_of(g) for g in group.elements]
    psi, psi_index, bar = [], {}, []
    for i in range(len(d.roots)):
        orbit = sorted({p[i] for p in perms})
        v = average([d.roots[j] for j in orbit])
        if v not in psi_index:
            psi_index[v] = len(psi)
            psi.append(v)
        bar.append(psi_index[v])
    delta = []
    for i in d.simple:
        v = psi[bar[i]]
        if v not in delta:
            delta.append(v)
    present = set(psi)
    reduced_long = [v for v in psi if tuple(2 * x for x in v) not in present]
    reduced_short = [v for v in psi if tuple(x / 2 for x in v) not in present]

    rays: dict[QVector, list[int]] = {}
    for i in d.positive:
        rays.setdefault(_ray_key(psi[bar[i]]), []).append(i)
    blocks = []
    for members in rays.values():
        blocks.append(_make_block(d, members))
    blocks.sort(key=lambda b: (d.height(b.representative), d.coefficients(b.representative)))

    if any(b.block_type == "Type2" for b in blocks) and not d.has_even_type_a_component():
        raise AssertionError("Type2 block outside type A_2n")

    # W- and I-invariant form on the character lattice
    r = d.rank
    form = [[Fraction(sum(c[i] * c[j] for c in d.coroots)) for j in range(r)] for i in range(r)]
    return FoldedSystem(d, psi, delta, reduced_long, reduced_short, blocks, bar, form)


def _make_block(d: BasedRootDatum, members: list[int]) -> OrbitBlock:
    coeffs = {i: d.coefficients(i) for i in members}

    def below(a, b):  # a <= b in the positive root order
        return all(x <= y for x, y in zip(coeffs[a], coeffs[b]))

    minimal = [a for a in members if not any(b != a and below(b, a) for b in members)]
    minimal.sort(key=lambda a: (coeffs[a], d.roots[a]))
    roots = {d.roots[m] for m in members}
    is_sum = any(tuple(x + y for x, y in zip(d.roots[a], d.roots[b])) in roots
                 for a in members for b in members if a < b)
    return OrbitBlock(minimal[0], tuple(sorted(members, key=lambda a: (d.height(a), coeffs[a]))),
                      "Type2" if is_sum else "Type1", len(minimal) > 1)


# ---------------------------------------------------------------------------
# fixed Weyl groups and tori


@dataclass
class FixedWeylGroup:
    """The elements of ``ambient`` commuting with every element of a finite group."""

    ambient: WeylGroup
    indices: list[int]

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def order(self) -> int:
        return len(self.indices)

    def matrices(self) -> list:
        return [self.ambient.matrix(k) for k in self.indices]

    def folded_permutations(self, folded: FoldedSystem) -> set[tuple[int, ...]]:
        """Permutations of the folded roots induced by the fixed elements."""
        rep = {}
        for i, b in enumerate(folded.bar):
            rep.setdefault(b, i)
        perms = self.ambient.perms
        out = set()
        for k in self.indices:
            p = perms[k]
            out.add(tuple(folded.bar[p[rep[b]]] for b in range(len(folded.psi_I))))
        return out


def fixed_weyl(w: WeylGroup, group: GroupActionOnLattice) -> FixedWeylGroup:
    d = w.datum
    mask = np.ones(len(w), dtype=bool)
    for g in group.generators:
        pg = permutation_action(d, g).astype(w.perms.dtype)
        mask &= np.all(pg[w.perms] == w.perms[:, pg], axis=1)
    return FixedWeylGroup(w, [int(k) for k in np.nonzero(mask)[0]])


def pi0_fixed_torus(lattice: FinAbGroup, group: GroupActionOnLattice) -> FinAbGroup:
    """Component group of the fixed torus: torsion of the coinvariant lattice."""
    q, _ = coinvariants(lattice, group)
    t = q.torsion
    rels = tuple(tuple(x * int(i == j) for j in range(len(t))) for i, x in enumerate(t))
    return FinAbGroup(len(t), rels)


def induced_lattice_check(lattice: FinAbGroup, group: GroupActionOnLattice, radius: int = 1) -> bool:
    """Greedy search for a Z-basis permuted by the group."""
    n = lattice.ngens
    if lattice.relations:
        raise ActionError("induced lattice check needs a free lattice")
    if n == 0:
        return True
    std = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    box = [v for v in product(range(-radius, radius + 1), repeat=n) if any(v)]
    found = False
    for start in range(n):
        order = std[start:] + std[:start] + box
        basis: list[tuple[int, ...]] = []
        for v in order:
            if v in basis:
                continue
            orb = group.orbit(v)
            trial = basis + [o for o in orb if o not in basis]
            if len(trial) > n or _linalg.rank(trial) < len(trial):
                continue
            basis = trial
            if len(basis) == n:
                break
        if len(basis) == n and abs(determinant(basis)) == 1:
            found = True
            break
    if found:
        assert pi0_fixed_torus(lattice, group).is_trivial(), "induced lattice with disconnected fixed torus"
    return found
