"""Satake parameters, the normalized transfer and the subvariety S(G).

A group is described on the dual side by a ``GroupSpec``: the dual datum of
its quasi-split inner form with the Galois action, plus the Galois-stable
set of simple roots cutting out the dual of its minimal Levi.  Parameters
are characters of the lattice ``L = (X*(T^)_I)^Phi`` taken up to the fixed
Weyl group ``W^Gamma``; supercuspidal supports are characters of the
Kottwitz group ``K`` of the minimal Levi.  The natural surjection
``p: L -> K`` together with a half modulus character gives the transfer

    t(chi)(x) = delta^{-1/2}(x) * chi(p x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from . import _linalg
from .abelian import (
    FinAbGroup,
    columns_to_matrix,
    inverse_unimodular,
    is_surjective,
    map_matrix,
    matvec,
    solve_integer,
)
from .dualdata import DualGroupDatum, kottwitz_group
from .folding import FixedWeylGroup, fixed_weyl
from .rootdata import dual as dual_datum
from .rootdata import levi_subdatum, rho, weyl_group
from .values import FormalSum, FormalValue, TorusCharacter


class SpecError(ValueError):
    pass


def _key(m) -> tuple:
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True, eq=False)
class GroupSpec:
    name: str
    dual: DualGroupDatum
    minimal_levi: tuple[int, ...] = ()
    description: str = ""

    def __post_init__(self):
        levi = tuple(sorted(set(int(s) for s in self.minimal_levi)))
        object.__setattr__(self, "minimal_levi", levi)
        if any(not 0 <= s < len(self.dual.datum.simple) for s in levi):
            raise SpecError("minimal levi refers to a missing simple root")
        if not self.dual.is_stable(levi):
            raise SpecError("minimal levi is not Galois-stable")

    @property
    def datum(self):
        return self.dual.datum

    @property
    def is_quasisplit(self) -> bool:
        return not self.minimal_levi

    # -- lattices --------------------------------------------------------

    @cached_property
    def lattice(self) -> FinAbGroup:
        """``L = (X*(T^)_I)^Phi``, where parameters live."""
        return kottwitz_group(self.dual, ())

    @cached_property
    def kottwitz(self) -> FinAbGroup:
        """``K``, the Kottwitz group of the minimal Levi."""
        return kottwitz_group(self.dual, self.minimal_levi)

    @cached_property
    def projection(self) -> list[list[int]]:
        """Matrix of ``p: L -> K`` (K coordinates x L generators)."""
        return map_matrix(self.lattice, self.kottwitz)

    @cached_property
    def projection_kernel(self) -> tuple:
        rep = is_surjective(self.projection, self.lattice, self.kottwitz)
        if not rep.surjective:
            raise AssertionError("the lattice map onto the Kottwitz group is not surjective")
        return rep.kernel

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.kottwitz.reduce(matvec(self.projection, x))

    @cached_property
    def _sections(self) -> list[tuple[int, ...]]:
        """A preimage in ``L`` of each generator of ``K``."""
        k, lat = self.kottwitz, self.lattice
        cols = [tuple(r[j] for r in self.projection) for j in range(lat.ngens)] + list(k.relations)
        big = columns_to_matrix(cols, k.ngens)
        out = []
        for j in range(k.ngens):
            e = tuple(int(i == j) for i in range(k.ngens))
            sol = solve_integer(big, e, len(cols))
            if sol is None:
                raise AssertionError("no preimage for a Kottwitz generator")
            out.append(tuple(sol[: lat.ngens]))
        return out

    def preimage(self, m: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.lattice.ngens
        for c, s in zip(m, self._sections):
            out = [a + c * b for a, b in zip(out, s)]
        return self.lattice.reduce(out)

    # -- Weyl groups -----------------------------------------------------

    @cached_property
    def weyl(self):
        return weyl_group(self.datum)

    @cached_property
    def fixed_weyl(self) -> FixedWeylGroup:
        return fixed_weyl(self.weyl, self.dual.action.gamma)

    @cached_property
    def full_symmetric(self) -> bool:
        """True when W^Gamma acts on ``L`` as all coordinate permutations."""
        d, lat = self.datum, self.lattice
        n = d.rank
        if not self.dual.action.is_trivial() or lat.relations:
            return False
        std = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        roots = {tuple(int(k == i) - int(k == j) for k in range(n))
                 for i in range(n) for j in range(n) if i != j}
        return lat.embedding == std and set(d.roots) == roots

    def _lattice_matrix(self, a, group: FinAbGroup) -> tuple:
        cols = []
        for e in group.embedding:
            c = group.coords(matvec(a, e))
            if c is None:
                raise AssertionError("Weyl element does not preserve the lattice")
            cols.append(c)
        return _key(columns_to_matrix(cols, group.ngens))

    @cached_property
    def lattice_actions(self) -> list[tuple[int, tuple, tuple]]:
        """Distinct actions of W^Gamma on ``L``: (Weyl index, matrix, inverse matrix)."""
        seen, out = set(), []
        for k in self.fixed_weyl.indices:
            a = self.weyl.matrix(k)
            inv = inverse_unimodular(a)
            m = self._lattice_matrix(a, self.lattice)
            if m in seen:
                continue
            seen.add(m)
            out.append((k, m, self._lattice_matrix(inv, self.lattice)))
        return out

    @cached_property
    def levi_weyl_indices(self) -> list[int]:
        """``W_M`` inside ``W`` (indices), for the minimal Levi."""
        return self._levi_weyl(self.minimal_levi)

    def _levi_weyl(self, levi) -> list[int]:
        wl = weyl_group(levi_subdatum(self.datum, levi))
        out = []
        for k in range(len(wl)):
            idx = self.weyl.index_of_matrix(wl.matrix(k))
            if idx is None:
                raise AssertionError("Levi Weyl group does not embed")
            out.append(idx)
        return out

    @cached_property
    def levi_fixed_order(self) -> int:
        """``|W(M*, A*)|``: elements of ``W_M`` commuting with Galois."""
        fixed = set(self.fixed_weyl.indices)
        return sum(1 for k in self.levi_weyl_indices if k in fixed)

    @cached_property
    def normalizer(self) -> list[int]:
        """Elements of ``W^Gamma`` mapping the minimal Levi's roots to themselves."""
        d = self.datum
        levi = levi_subdatum(d, self.minimal_levi)
        idx = [d.root_index[r] for r in levi.roots]
        target = sorted(idx)
        perms = self.weyl.perms
        return [k for k in self.fixed_weyl.indices if sorted(int(perms[k][i]) for i in idx) == target]

    def _kottwitz_actions(self, indices) -> list[tuple]:
        seen, out = set(), []
        for k in indices:
            m = self._lattice_matrix(self.weyl.matrix(k), self.kottwitz)
            if m not in seen:
                seen.add(m)
                out.append(m)
        return out

    @cached_property
    def relative_weyl(self) -> list[tuple]:
        """``W(G, A)`` as distinct matrices on ``K``."""
        return self._kottwitz_actions(self.normalizer)

    def intermediate_weyl(self, levi) -> list[tuple]:
        """``W(L, A)`` on ``K`` for a Levi between the minimal one and ``G``."""
        inside = set(self._levi_weyl(levi))
        return self._kottwitz_actions([k for k in self.normalizer if k in inside])

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        out = {"name": self.name, **self.dual.to_json(), "minimal_levi": list(self.minimal_levi)}
        if self.description:
            out["description"] = self.description
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GroupSpec":
        try:
            dual = DualGroupDatum.from_json(obj)
            return cls(obj.get("name", "custom"), dual, tuple(obj.get("minimal_levi", ())),
                       obj.get("description", ""))
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed group spec: {exc}") from exc

    def describe(self) -> dict:
        return {
            "name": self.name,
            "quasi_split": self.is_quasisplit,
            "parameter_lattice": self.lattice.to_json(),
            "kottwitz_group": self.kottwitz.to_json(),
            "fixed_weyl_order": self.fixed_weyl.order,
        }


# ---------------------------------------------------------------------------
# parameters


def act_on_parameter(spec: GroupSpec, inverse_matrix, c: TorusCharacter) -> TorusCharacter:
    return c.pullback(inverse_matrix, spec.lattice)


def orbit(spec: GroupSpec, c: TorusCharacter) -> list[TorusCharacter]:
    return [act_on_parameter(spec, inv, c) for _, _, inv in spec.lattice_actions]


def normal_form(spec: GroupSpec, c: TorusCharacter) -> TorusCharacter:
    """Least element of the W^Gamma-orbit, ordering values by (q, unity, symbols)."""
    if spec.full_symmetric:
        return TorusCharacter(c.domain, tuple(sorted(c.values, key=FormalValue.sort_key)))
    return min(orbit(spec, c), key=TorusCharacter.key)


@dataclass(frozen=True, eq=False)
class SatakeParameter:
    spec: GroupSpec
    char: TorusCharacter

    def __post_init__(self):
        if self.char.domain != self.spec.lattice:
            raise SpecError("character does not live on the parameter lattice")

    @classmethod
    def from_values(cls, spec: GroupSpec, values: Sequence[FormalValue]) -> "SatakeParameter":
        return cls(spec, TorusCharacter(spec.lattice, tuple(values)))

    @cached_property
    def normal_form(self) -> TorusCharacter:
        return normal_form(self.spec, self.char)

    def __eq__(self, other) -> bool:
        return isinstance(other, SatakeParameter) and param_equal(self, other)

    def __hash__(self):
        return hash((self.spec.name, self.normal_form.key()))

    def __str__(self) -> str:
        return str(self.normal_form)

    def to_json(self) -> dict:
        return {"spec": self.spec.name, "values": [str(v) for v in self.char.values],
                "normal_form": [str(v) for v in self.normal_form.values],
                "generators": [list(e) for e in self.spec.lattice.embedding]}


def param_equal(s: SatakeParameter, t: SatakeParameter) -> bool:
    if s.spec is not t.spec and s.spec.to_json() != t.spec.to_json():
        raise SpecError("parameters belong to different groups")
    return s.normal_form.key() == t.normal_form.key()


# ---------------------------------------------------------------------------
# modulus characters and the transfer


def rho_check(spec: GroupSpec, levi: Iterable[int]) -> tuple[int, ...]:
    """Twice the half-sum of positive coroots of the dual Levi (a functional on ``X*(T^)``)."""
    levi = tuple(sorted(set(levi)))
    if not spec.dual.is_stable(levi):
        raise SpecError(f"levi {levi} is not Galois-stable")
    two_rho = rho(dual_datum(levi_subdatum(spec.datum, levi))).twice
    for g in spec.dual.action.gamma.generators:
        moved = tuple(sum(g[i][j] * two_rho[i] for i in range(len(two_rho))) for j in range(len(two_rho)))
        assert moved == two_rho, "half-sum of coroots is not Galois-invariant"
    return two_rho


def delta_half(spec: GroupSpec, levi: Iterable[int], sign: int, group: Optional[FinAbGroup] = None) -> TorusCharacter:
    """``delta_{B_M}^{sign/2}`` as a character of ``L`` (or of ``group``).

    On a lattice vector ``x`` it takes the value ``q^{-sign <x, rho^vee_M>}``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    two_rho = rho_check(spec, levi)
    group = group or spec.lattice
    vals = []
    for e in group.embedding:
        vals.append(FormalValue(Fraction(-sign * sum(a * b for a, b in zip(e, two_rho)), 2)))
    return TorusCharacter(group, tuple(vals))


def _check_support(spec: GroupSpec, chi: TorusCharacter) -> None:
    if chi.domain != spec.kottwitz:
        raise SpecError("character does not live on the Kottwitz group of the minimal Levi")


def transfer(spec: GroupSpec, chi: TorusCharacter) -> SatakeParameter:
    """Normalized transfer: ``delta_{B_M}^{-1/2} * (chi o p)``."""
    _check_support(spec, chi)
    c = chi.pullback(spec.projection, spec.lattice) * delta_half(spec, spec.minimal_levi, -1)
    return SatakeParameter(spec, c)


def transfer_unnormalized(spec: GroupSpec, chi: TorusCharacter) -> SatakeParameter:
    """Same map assembled as ``delta_B^{-1/2} * ((delta_P^{1/2} chi) o p)``.

    ``delta_P^{1/2}`` is built directly on ``K`` from ``rho^vee_G - rho^vee_M``,
    which pairs to zero with the Levi's roots.
    """
    _check_support(spec, chi)
    full = tuple(range(len(spec.datum.simple)))
    rg, rm = rho_check(spec, full), rho_check(spec, spec.minimal_levi)
    diff = tuple(a - b for a, b in zip(rg, rm))
    dp = TorusCharacter(spec.kottwitz, tuple(
        FormalValue(Fraction(-sum(a * b for a, b in zip(e, diff)), 2)) for e in spec.kottwitz.embedding))
    c = (dp * chi).pullback(spec.projection, spec.lattice) * delta_half(spec, full, -1)
    return SatakeParameter(spec, c)


# ---------------------------------------------------------------------------
# membership in S(G)


@dataclass
class MembershipResult:
    member: bool
    witness: Optional[TorusCharacter] = None
    weyl_index: Optional[int] = None
    certificate: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"member": self.member}
        if self.member:
            out["witness"] = [str(v) for v in self.witness.values]
        else:
            out["certificate"] = self.certificate
        return out


def member_S_G(spec: GroupSpec, s: SatakeParameter) -> MembershipResult:
    """Decide whether ``s`` is a transfer, returning a witness or a refutation.

    ``s`` is in the image iff some ``w.s * delta^{+1/2}`` kills the kernel of ``p``;
    the witness is then that character pushed down to ``K``.
    """
    kernel = spec.projection_kernel
    shift = delta_half(spec, spec.minimal_levi, +1)
    shifted = [(v, shift.evaluate(v)) for v in kernel]
    certificate = []
    for k, _, inv in spec.lattice_actions:
        # (w.s)(v) = s(w^{-1} v)
        bad = None
        for v, sv in shifted:
            val = s.char.evaluate(matvec(inv, v)) * sv
            if not val.is_one():
                bad = (v, val)
                break
        if bad is None:
            c = act_on_parameter(spec, inv, s.char) * shift
            chi = TorusCharacter(spec.kottwitz, tuple(c.evaluate(x) for x in spec._sections))
            if not transfer(spec, chi) == s:
                raise AssertionError("recovered witness does not transfer back")
            return MembershipResult(True, chi, k)
        certificate.append({"weyl_element": spec.weyl.word(k), "kernel_vector": list(bad[0]),
                            "value": str(bad[1])})
    return MembershipResult(False, certificate=certificate)


def levi_orbit_vectors(spec: GroupSpec, levi: Optional[Iterable[int]] = None) -> list[tuple[tuple[int, ...], int]]:
    """For each Frobenius orbit of folded simple roots of the Levi: (vector in L, orbit size)."""
    levi = sorted(spec.minimal_levi if levi is None else set(levi))
    dual = spec.dual
    inertia = [dual.simple_permutation(g) for g in dual.action.inertia.elements]
    frob = dual.simple_permutation(dual.action.frobenius)
    i_orbits = []
    for s in levi:
        o = frozenset(p[s] for p in inertia)
        if o not in i_orbits:
            i_orbits.append(o)
    done, out = set(), []
    for o in i_orbits:
        if o in done:
            continue
        cyc, cur = [], o
        while cur not in cyc:
            cyc.append(cur)
            cur = frozenset(frob[s] for s in cur)
        done.update(cyc)
        v = [0] * spec.datum.rank
        for orb in cyc:
            a = spec.datum.simple_roots[min(orb)]
            v = [x + y for x, y in zip(v, a)]
        coords = spec.lattice.coords(v)
        if coords is None:
            raise AssertionError("orbit sum of simple roots is not Frobenius-invariant")
        out.append((coords, len(cyc)))
    return out


def admissible_pair_check(spec: GroupSpec, s: SatakeParameter) -> bool:
    """Is there ``w`` with ``(w.s)(v_O) = q^{|O|}`` for every Frobenius orbit ``O``?"""
    vecs = levi_orbit_vectors(spec)
    targets = [(v, FormalValue(size)) for v, size in vecs]
    for _, _, inv in spec.lattice_actions:
        if all(s.char.evaluate(matvec(inv, v)) == t for v, t in targets):
            return True
    return False


def eigenvalue_check(spec: GroupSpec, levi: Iterable[int]) -> list[tuple[FormalValue, int]]:
    """Values of ``delta^{-1/2}`` of the Levi on its folded simple orbit vectors."""
    c = delta_half(spec, levi, -1)
    return [(c.evaluate(v), size) for v, size in levi_orbit_vectors(spec, levi)]


# ---------------------------------------------------------------------------
# invariant rings


def lattice_orbit(spec: GroupSpec, x: Sequence[int]) -> list[tuple[int, ...]]:
    out = []
    for _, m, _ in spec.lattice_actions:
        y = spec.lattice.reduce(matvec(m, x))
        if y not in out:
            out.append(y)
    return out


def kottwitz_orbit(spec: GroupSpec, m: Sequence[int], actions=None) -> list[tuple[int, ...]]:
    out = []
    for a in (spec.relative_weyl if actions is None else actions):
        y = spec.kottwitz.reduce(matvec(a, m))
        if y not in out:
            out.append(y)
    return out


def evaluate_center(spec: GroupSpec, f: dict, s: SatakeParameter) -> FormalSum:
    """Evaluate ``sum_x c_x Sigma_x`` at ``s``; ``Sigma_x`` sums the distinct W^Gamma-translates of ``x``."""
    total = FormalSum()
    for x, coeff in f.items():
        for y in lattice_orbit(spec, x):
            total = total + FormalSum.of(s.char.evaluate(y), coeff)
    return total


@dataclass
class OrbitSumImage:
    target: tuple[int, ...]
    preimage: tuple[int, ...]
    image: dict  # K element -> integer coefficient
    multiplier: int
    sigma: dict  # sum over W(G,A) with multiplicity
    decomposition: list  # (orbit representative, coefficient) in distinct orbit sums
    normalizer_image: dict

    @property
    def claim_holds(self) -> bool:
        return self.image == {k: self.multiplier * v for k, v in self.sigma.items()}

    @property
    def mass(self) -> int:
        return sum(self.image.values())

    def to_json(self) -> dict:
        return {"m": list(self.target), "preimage": list(self.preimage),
                "image": [[list(k), v] for k, v in sorted(self.image.items())],
                "multiplier": self.multiplier,
                "expected": [[list(k), self.multiplier * v] for k, v in sorted(self.sigma.items())],
                "claim_holds": self.claim_holds,
                "decomposition": [[list(k), str(c)] for k, c in self.decomposition]}


def _push(spec: GroupSpec, t, indices) -> dict:
    out: dict = {}
    for k in indices:
        x = spec.lattice.coords(spec.weyl.apply(k, spec.lattice.ambient(t)))
        m = spec.project(x)
        out[m] = out.get(m, 0) + 1
    return out


def orbit_sum_transfer(spec: GroupSpec, m: Sequence[int]) -> OrbitSumImage:
    """Push ``Sigma_{t*} = sum_{w in W^Gamma} w t*`` along ``p`` for a preimage ``t*`` of ``m``.

    Also returns ``|W(M*,A*)|`` and ``Sigma_m = sum_{w in W(G,A)} w m`` so the
    two can be compared, and the decomposition of the image into distinct
    W(G,A)-orbit sums (which is what surjectivity needs).
    """
    m = spec.kottwitz.reduce(m)
    t = spec.preimage(m)
    image = _push(spec, t, spec.fixed_weyl.indices)
    sigma: dict = {}
    for a in spec.relative_weyl:
        y = spec.kottwitz.reduce(matvec(a, m))
        sigma[y] = sigma.get(y, 0) + 1
    decomposition = []
    remaining = dict(image)
    while remaining:
        rep = min(remaining)
        orb = kottwitz_orbit(spec, rep)
        coeff = remaining[rep]
        for y in orb:
            if remaining.get(y) != coeff:
                raise AssertionError("image is not W(G,A)-invariant")
            del remaining[y]
        decomposition.append((rep, Fraction(coeff)))
    return OrbitSumImage(m, t, image, spec.levi_fixed_order, sigma, decomposition,
                         _push(spec, t, spec.normalizer))


def surjectivity_certificate(spec: GroupSpec, height: int) -> dict:
    """Check that each distinct orbit sum ``Sigma_m`` with ``|m| <= height`` is a
    rational combination of images of ``Sigma_{t*}``."""
    from itertools import product as cartesian

    k = spec.kottwitz
    tors = {}
    for r in k.relations:
        for i, x in enumerate(r):
            if x:
                tors[i] = abs(x)
    ranges = [range(tors[i]) if i in tors else range(-height, height + 1) for i in range(k.ngens)]
    elements = [m for m in cartesian(*ranges)
                if sum(abs(x) for i, x in enumerate(m) if i not in tors) <= height]
    images = [orbit_sum_transfer(spec, m).image for m in elements]
    support = sorted({y for im in images for y in im} | set(elements))
    pos = {y: i for i, y in enumerate(support)}

    def vec(d):
        v = [0] * len(support)
        for y, c in d.items():
            v[pos[y]] = c
        return v

    cols = [vec(im) for im in images]
    failures = []
    for m in elements:
        target = {y: 1 for y in kottwitz_orbit(spec, m)}
        if _linalg.solve(cols, vec(target)) is None:
            failures.append(m)
    return {"checked": len(elements), "failures": failures, "surjective": not failures}


def constant_term_include(spec: GroupSpec, levi: Iterable[int], f: dict) -> list[tuple[tuple[int, ...], int]]:
    """Rewrite a W(G,A)-invariant element of ``C[K]`` in W(L,A)-orbit sums.

    ``f`` maps elements of ``K`` to coefficients; the result lists
    (orbit representative, coefficient) over distinct W(L,A)-orbits.
    """
    levi = set(levi)
    if not set(spec.minimal_levi) <= levi or not spec.dual.is_stable(levi):
        raise SpecError("levi must be Galois-stable and contain the minimal levi")
    g_actions = spec.relative_weyl
    f = {spec.kottwitz.reduce(x): c for x, c in f.items() if c}
    for x, c in f.items():
        for y in kottwitz_orbit(spec, x, g_actions):
            if f.get(y) != c:
                raise SpecError("input is not W(G,A)-invariant")
    l_actions = spec.intermediate_weyl(sorted(levi))
    remaining = dict(f)
    out = []
    while remaining:
        rep = min(remaining)
        c = remaining[rep]
        for y in kottwitz_orbit(spec, rep, l_actions):
            del remaining[y]
        out.append((rep, c))
    return out


def expand_orbit_sums(spec: GroupSpec, sums: dict, actions=None) -> dict:
    """``{m: c}`` in distinct orbit sums -> element of ``C[K]``."""
    out: dict = {}
    for m, c in sums.items():
        for y in kottwitz_orbit(spec, m, actions):
            out[y] = out.get(y, 0) + c
    return out


# ---------------------------------------------------------------------------
# inner forms


def pi_star(spec_g: GroupSpec, spec_star: GroupSpec, s: SatakeParameter) -> SatakeParameter:
    """Read a parameter of ``G`` as one of its quasi-split inner form."""
    if not spec_star.is_quasisplit:
        raise SpecError("target spec must be quasi-split")
    if spec_g.dual.to_json() != spec_star.dual.to_json():
        raise SpecError("dual data differ")
    if spec_g.lattice.embedding != spec_star.lattice.embedding:
        raise SpecError("parameter lattices differ")
    return SatakeParameter(spec_star, TorusCharacter(spec_star.lattice, s.char.values))


def gl_inner_form_parameter(n: int, d: int, parts: Sequence[int], twists: Sequence[FormalValue]) -> SatakeParameter:
    """Block diagonal parameter ``prod_i eta_i * delta_{B_i}^{-1/2}`` for inner forms of GL_n."""
    from .catalog import glmd

    parts = list(parts)
    if d <= 0 or any(m <= 0 for m in parts) or n != d * sum(parts):
        raise SpecError(f"n = {n} is not d * sum(m_i) for d = {d}, m = {parts}")
    if len(twists) != len(parts):
        raise SpecError("need one twist per block")
    vals = []
    for m, eta in zip(parts, twists):
        size = m * d
        for j in range(size):
            vals.append(eta * FormalValue(Fraction(size - 1, 2) - j))
    return SatakeParameter.from_values(glmd(n, d, parts), vals)


def block_sizes(spec: GroupSpec) -> list[int]:
    """Sizes of the diagonal blocks of a GL-type minimal Levi."""
    n = len(spec.datum.simple) + 1
    cuts = [i + 1 for i in range(n - 1) if i not in spec.minimal_levi]
    bounds = [0] + cuts + [n]
    return [b - a for a, b in zip(bounds, bounds[1:])]
