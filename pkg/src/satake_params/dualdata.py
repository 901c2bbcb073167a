"""Dual group bookkeeping: centers of dual Levis and Kottwitz groups.

Conventions: the datum stored here is the dual group's, on the lattice
``X*(T^) = X_*(T)``, and the Galois matrices are the ones acting on
``X_*(T)``.  A Levi of the dual group is named by a set of positions in the
list of simple roots.

The Kottwitz group of a Levi ``M`` is the character group of
``(Z(M^)^I)_Phi``, i.e. ``((X*(T^) / Z.roots(M^))_I)^Phi``: first
coinvariants under inertia, then invariants under Frobenius.  For example,
for the unramified unitary group in three variables (Frobenius acting on
``Z^3`` by ``e_i -> -e_{4-i}``, trivial inertia) and ``M = T`` one gets the
Frobenius-fixed vectors of ``Z^3``, which is ``Z`` spanned by ``e1 - e3``;
for ``M = G`` the quotient ``Z^3 / Z(e1-e2, e2-e3) = Z`` carries the action
by ``-1`` and the group is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import _linalg
from .abelian import (
    ActionError,
    FinAbGroup,
    GroupActionOnLattice,
    augmentation,
    hermite_rows,
    invariants,
    is_surjective,
    map_matrix,
    simplify,
    subquotient,
)
from .folding import GaloisAction
from .rootdata import BasedRootDatum, levi_subdatum


@dataclass(frozen=True)
class DualGroupDatum:
    datum: BasedRootDatum
    action: GaloisAction

    def __post_init__(self):
        self.action.validate(self.datum)

    @property
    def rank(self) -> int:
        return self.datum.rank

    def simple_permutation(self, g) -> tuple[int, ...]:
        """How ``g`` permutes the simple roots, as positions in ``datum.simple``."""
        perm = self.datum.permutation_of(g)
        pos = {r: k for k, r in enumerate(self.datum.simple)}
        return tuple(pos[perm[r]] for r in self.datum.simple)

    def is_stable(self, levi: Iterable[int]) -> bool:
        levi = set(levi)
        for g in self.action.inertia_gens + (self.action.frobenius,):
            p = self.simple_permutation(g)
            if {p[s] for s in levi} != levi:
                return False
        return True

    def levi(self, subset: Iterable[int]) -> BasedRootDatum:
        return levi_subdatum(self.datum, subset)

    def orbit_sum_candidates(self) -> list[tuple[int, ...]]:
        """Basis vectors followed by their Galois orbit sums (nice generators)."""
        n = self.rank
        out = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        for e in list(out):
            orb = self.action.gamma.orbit(e)
            s = tuple(sum(v[i] for v in orb) for i in range(n))
            if any(s) and s not in out:
                out.append(s)
        return out

    def to_json(self) -> dict:
        return {"datum": self.datum.to_json(), "action": self.action.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "DualGroupDatum":
        d = BasedRootDatum.from_json(obj["datum"])
        return cls(d, GaloisAction.from_json(obj.get("action"), d.rank))


def center_char_group(d: DualGroupDatum | BasedRootDatum) -> FinAbGroup:
    """``X*(Z(G^)) = X*(T^) / Z.roots``."""
    datum = d.datum if isinstance(d, DualGroupDatum) else d
    n = datum.rank
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rels = hermite_rows(datum.simple_roots, n)
    return simplify(subquotient(basis, rels, n), basis)


def kottwitz_group(d: DualGroupDatum, levi: Iterable[int]) -> FinAbGroup:
    """``((X*(T^)/Z.roots(M^))_I)^Phi`` as a subquotient of ``X*(T^)``."""
    levi = sorted(set(levi))
    if not d.is_stable(levi):
        raise ActionError(f"levi {levi} is not Galois-stable")
    n = d.rank
    rels = [d.datum.simple_roots[s] for s in levi] + augmentation(d.action.inertia)
    rels = hermite_rows(rels, n) if rels else []
    quotient = FinAbGroup(n, tuple(rels))
    frob = GroupActionOnLattice.generate([d.action.frobenius], n)
    fixed = invariants(quotient, frob)
    return simplify(fixed, d.orbit_sum_candidates())


def levi_inclusion_map(d: DualGroupDatum, small: Iterable[int], big: Iterable[int]):
    """The natural map between Kottwitz groups for nested Levis, with a surjectivity report."""
    small, big = set(small), set(big)
    if not small <= big:
        raise ActionError("levis are not nested")
    ks, kb = kottwitz_group(d, small), kottwitz_group(d, big)
    f = map_matrix(ks, kb)
    return ks, kb, f, is_surjective(f, ks, kb)


def split_central_rank(d: DualGroupDatum) -> int:
    """Rank of the maximal split central torus of G.

    Computed on the group side: Galois-fixed rational cocharacters of ``T``
    orthogonal to every root of ``G`` (the coroots of the dual datum).
    """
    n = d.rank
    rows = [list(c) for c in d.datum.coroots]
    for g in d.action.gamma.generators:
        for i in range(n):
            rows.append([g[i][j] - int(i == j) for j in range(n)])
    return len(_linalg.kernel(rows, n))
