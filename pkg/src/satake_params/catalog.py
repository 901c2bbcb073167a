"""Built-in groups, described through the dual data of their quasi-split forms."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .dualdata import DualGroupDatum
from .folding import GaloisAction
from .rootdata import BasedRootDatum, gl, semisimple
from .satake import GroupSpec


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    spec: Optional[GroupSpec] = None
    datum: Optional[BasedRootDatum] = None  # fold-only entries
    action: Optional[GaloisAction] = None

    @property
    def kind(self) -> str:
        return "group" if self.spec is not None else "fold"

    def fold_input(self):
        if self.spec is not None:
            return self.spec.datum, self.spec.dual.action
        return self.datum, self.action


def simple_permutation_matrix(d: BasedRootDatum, perm: dict) -> list[list[int]]:
    """Lattice automorphism of a semisimple adjoint-form datum (simple roots = basis)
    permuting the simple roots by ``perm`` (positions -> positions)."""
    n = d.rank
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[perm.get(i, i)][i] = 1
    return m


def gl_theta(n: int) -> list[list[int]]:
    """``e_i -> -e_{n+1-i}``: the pinned outer automorphism on the GL_n lattice."""
    return [[-int(i == n - 1 - j) for j in range(n)] for i in range(n)]


def glmd(n: int, d: int, parts: Sequence[int]) -> GroupSpec:
    return _glmd(n, d, tuple(parts))


@lru_cache(maxsize=None)
def _glmd(n: int, d: int, parts: tuple) -> GroupSpec:
    if d <= 0 or any(m <= 0 for m in parts) or n != d * sum(parts):
        raise UnknownEntry(f"GLmD({n},{d},{list(parts)}): need n = d * sum(m)")
    levi, start = [], 0
    for m in parts:
        size = m * d
        levi += list(range(start, start + size - 1))
        start += size
    name = f"GLmD({n},{d},[{','.join(map(str, parts))}])"
    return GroupSpec(name, DualGroupDatum(gl(n), GaloisAction.trivial(n)), tuple(levi),
                     "inner form of GL_n with minimal Levi blocks of sizes d*m_i")


@lru_cache(maxsize=None)
def _gl(n: int) -> GroupSpec:
    return GroupSpec(f"GL({n})", DualGroupDatum(gl(n), GaloisAction.trivial(n)), (),
                     "split general linear group")


@lru_cache(maxsize=None)
def _sl(n: int) -> GroupSpec:
    d = semisimple("A", n - 1, "adjoint")
    return GroupSpec(f"SL({n})", DualGroupDatum(d, GaloisAction.trivial(d.rank)), (),
                     "split special linear group (dual PGL_n)")


@lru_cache(maxsize=None)
def _pgl(n: int) -> GroupSpec:
    d = semisimple("A", n - 1, "sc")
    return GroupSpec(f"PGL({n})", DualGroupDatum(d, GaloisAction.trivial(d.rank)), (),
                     "split projective linear group (dual SL_n)")


def _sp4() -> GroupSpec:
    d = semisimple("B", 2, "adjoint")
    return GroupSpec("Sp(4)", DualGroupDatum(d, GaloisAction.trivial(2)), (),
                     "split symplectic group of rank 2 (dual SO_5)")


def _a2_swap() -> GroupSpec:
    d = gl(3)
    return GroupSpec("A2-swap", DualGroupDatum(d, GaloisAction((gl_theta(3),), None, 3)), (),
                     "ramified quasi-split unitary group in 3 variables (inertia acts by the outer automorphism)")


def _su3_unram() -> GroupSpec:
    d = semisimple("A", 2, "adjoint")
    swap = simple_permutation_matrix(d, {0: 1, 1: 0})
    return GroupSpec("SU3-unram", DualGroupDatum(d, GaloisAction((), swap, 2)), (),
                     "unramified quasi-split special unitary group in 3 variables")


def _a3_swap() -> GroupSpec:
    d = semisimple("A", 3, "adjoint")
    swap = simple_permutation_matrix(d, {0: 2, 2: 0})
    return GroupSpec("A3-swap", DualGroupDatum(d, GaloisAction((swap,), None, 3)), (),
                     "ramified quasi-split special unitary group in 4 variables")


def _d4_triality() -> GroupSpec:
    d = semisimple("D", 4, "adjoint")
    rot = simple_permutation_matrix(d, {0: 2, 2: 3, 3: 0})
    flip = simple_permutation_matrix(d, {2: 3, 3: 2})
    return GroupSpec("D4-triality", DualGroupDatum(d, GaloisAction((rot,), flip, 4)), (),
                     "quasi-split triality form of D_4 (inertia Z/3, Frobenius a transposition)")


def _fold_entry(name, kind, n, perms, description) -> CatalogEntry:
    d = semisimple(kind, n, "adjoint")
    gens = tuple(simple_permutation_matrix(d, p) for p in perms)
    return CatalogEntry(name, description, datum=d, action=GaloisAction(gens, None, d.rank))


FIXED_NAMES = [
    "GL(2)", "GL(3)", "GL(4)", "GL(5)", "SL(2)", "SL(3)", "SL(4)", "PGL(2)", "PGL(3)",
    "Sp(4)", "A2-swap", "SU3-unram", "A3-swap", "D4-triality",
    "GLmD(2,2,[1])", "GLmD(4,2,[1,1])", "GLmD(3,3,[1])", "GLmD(4,4,[1])", "GLmD(6,3,[1,1])",
    "A5-swap", "E6-swap", "D4-S3",
]


@lru_cache(maxsize=None)
def resolve(name: str) -> CatalogEntry:
    name = name.strip().replace(" ", "")
    m = re.fullmatch(r"GLmD\((\d+),(\d+),\[(\d+(?:,\d+)*)\]\)", name)
    if m:
        spec = glmd(int(m.group(1)), int(m.group(2)), [int(x) for x in m.group(3).split(",")])
        return CatalogEntry(spec.name, spec.description, spec)
    m = re.fullmatch(r"(GL|SL|PGL)\((\d+)\)", name)
    if m:
        n = int(m.group(2))
        if n < 1 or (m.group(1) != "GL" and n < 2):
            raise UnknownEntry(name)
        spec = {"GL": _gl, "SL": _sl, "PGL": _pgl}[m.group(1)](n)
        return CatalogEntry(spec.name, spec.description, spec)
    builders = {
        "Sp(4)": _sp4, "A2-swap": _a2_swap, "SU3-unram": _su3_unram,
        "A3-swap": _a3_swap, "D4-triality": _d4_triality,
    }
    if name in builders:
        spec = builders[name]()
        return CatalogEntry(spec.name, spec.description, spec)
    if name == "A5-swap":
        return _fold_entry(name, "A", 5, [{0: 4, 4: 0, 1: 3, 3: 1}], "A_5 folded by its diagram involution")
    if name == "E6-swap":
        return _fold_entry(name, "E", 6, [{0: 5, 5: 0, 2: 4, 4: 2}], "E_6 folded by its diagram involution")
    if name == "D4-S3":
        return _fold_entry(name, "D", 4, [{0: 2, 2: 3, 3: 0}, {2: 3, 3: 2}],
                           "D_4 folded by the full S_3 of diagram automorphisms")
    raise UnknownEntry(name)


def entries() -> list[CatalogEntry]:
    return [resolve(n) for n in FIXED_NAMES]


def group_specs() -> list[GroupSpec]:
    return [e.spec for e in entries() if e.spec is not None]
