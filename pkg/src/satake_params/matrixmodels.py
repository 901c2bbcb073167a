"""Exact matrix checks in SL_n / GL_n with the pinned outer automorphism.

Everything is over ``Fraction``; the residue field size is specialized to a
rational (default 4) where needed.  ``tau(g) = J (g^T)^{-1} J^{-1}`` with the
alternating antidiagonal ``J``, which maps ``x_{a_i}(y)`` to ``x_{a_{n-i}}(y)``.
All formulas are for characteristic 0; in characteristic 2 the fixed root
group of a Type2 block cannot use the ``-y^2/2`` correction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

from . import _linalg
from .abelian import FinAbGroup, GroupActionOnLattice, kernel_basis
from .folding import pi0_fixed_torus


class NotSemisimple(ValueError):
    pass


class ReductionFailure(AssertionError):
    pass


class ExactMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(Fraction(x) for x in r) for r in rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries) -> "ExactMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, c=1) -> "ExactMatrix":
        return cls([[c if (r, s) == (i, j) else 0 for s in range(n)] for r in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        cols = list(zip(*other.rows))
        return ExactMatrix([[sum(a * b for a, b in zip(r, c) if a and b) for c in cols] for r in self.rows])

    def power(self, k: int) -> "ExactMatrix":
        out = ExactMatrix.identity(self.n)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)))

    def det(self) -> Fraction:
        a = [list(r) for r in self.rows]
        n, det = self.n, Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] / a[c][c]
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "ExactMatrix":
        n = self.n
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[c], a[piv] = a[piv], a[c]
            p = a[c][c]
            a[c] = [x / p for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return ExactMatrix([r[n:] for r in a])

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_upper(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i > j)

    def is_monomial(self) -> bool:
        return all(sum(1 for x in r if x) == 1 for r in self.rows) and \
            all(sum(1 for x in c if x) == 1 for c in zip(*self.rows))

    def permutation(self) -> tuple[int, ...]:
        """For a monomial matrix, the image index of each basis vector."""
        return tuple(next(i for i in range(self.n) if self.rows[i][j]) for j in range(self.n))

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def level(self, k: int) -> list[Fraction]:
        return [self.rows[i][i + k] for i in range(self.n - k)]

    def __repr__(self) -> str:
        return "ExactMatrix(" + repr([[str(x) for x in r] for r in self.rows]) + ")"

    def to_json(self):
        return [[str(x) for x in r] for r in self.rows]


def root_element(n: int, i: int, j: int, y) -> ExactMatrix:
    """``I + y E_ij`` (0-based indices)."""
    return ExactMatrix.identity(n) + ExactMatrix.unit(n, i, j, y)


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a.inverse() @ b.inverse() @ a @ b


@dataclass(frozen=True)
class OuterAuto:
    """``g -> J (g^T)^{-1} J^{-1}`` (or the identity when ``trivial``)."""

    n: int
    trivial: bool = False

    def __post_init__(self):
        if not self.trivial:
            self.check()

    @property
    def J(self) -> ExactMatrix:
        n = self.n
        return ExactMatrix([[(-1) ** i if j == n - 1 - i else 0 for j in range(n)] for i in range(n)])

    def __call__(self, g: ExactMatrix) -> ExactMatrix:
        if self.trivial:
            return g
        j = self.J
        return j @ g.transpose().inverse() @ j.inverse()

    def lie(self, x: ExactMatrix) -> ExactMatrix:
        """Differential on the Lie algebra: ``X -> -J X^T J^{-1}``."""
        if self.trivial:
            return x
        j = self.J
        return (j @ x.transpose() @ j.inverse()).scale(-1)

    def root_image(self, i: int) -> int:
        """Index of the simple root ``tau(a_i)`` (0-based)."""
        return i if self.trivial else self.n - 2 - i

    def check(self) -> None:
        n = self.n
        g = ExactMatrix([[i + 2 * j + int(i == j) + (1 if j > i else 0) for j in range(n)] for i in range(n)])
        if g.det() == 0:
            g = g + ExactMatrix.identity(n)
        if self(self(g)) != g:
            raise AssertionError("tau is not an involution")
        d = ExactMatrix.diag([Fraction(k + 2) for k in range(n)])
        if not self(d).is_diagonal():
            raise AssertionError("tau does not preserve the diagonal torus")
        for i in range(n - 1):
            j = self.root_image(i)
            for y in (1, 3, Fraction(-1, 2)):
                if self(root_element(n, i, i + 1, y)) != root_element(n, j, j + 1, y):
                    raise AssertionError("tau does not preserve the standard splitting")
        if not self(root_element(n, 0, n - 1, 1)).is_upper():
            raise AssertionError("tau does not preserve the Borel")


@lru_cache(maxsize=None)
def outer_auto(n: int) -> OuterAuto:
    return OuterAuto(n)


# ---------------------------------------------------------------------------
# fixed root groups


def type1_element(n: int, i: int, y) -> ExactMatrix:
    """``x_a(y) x_{tau a}(y)`` for the simple root ``a_i`` with ``tau a_i`` orthogonal."""
    j = outer_auto(n).root_image(i)
    return root_element(n, i, i + 1, y) @ root_element(n, j, j + 1, y)


def beta_element(n: int, i: int, c) -> ExactMatrix:
    """``x_beta(c)`` normalized by ``[x_a(c), x_{tau a}(1)] = x_beta(c)``."""
    j = outer_auto(n).root_image(i)
    return commutator(root_element(n, i, i + 1, c), root_element(n, j, j + 1, 1))


def type2_element(n: int, i: int, y) -> ExactMatrix:
    """``x_a(y) x_{tau a}(y) x_beta(-y^2/2)`` for adjacent ``a, tau a``."""
    y = Fraction(y)
    j = outer_auto(n).root_image(i)
    return root_element(n, i, i + 1, y) @ root_element(n, j, j + 1, y) @ beta_element(n, i, -y * y / 2)


@dataclass
class Report:
    ok: bool
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, **info):
        self.checks.append({"check": name, "passed": bool(passed), **info})
        self.ok = self.ok and bool(passed)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks}


def _verify_formula(element: Callable, tau: OuterAuto, n: int, ys) -> Report:
    rep = Report(True)
    ident = ExactMatrix.identity(n)
    rep.add("identity at 0", element(0) == ident)
    rep.add("inverse pair", element(1) @ element(-1) == ident)
    for y in ys:
        rep.add("tau-fixed", tau(element(y)) == element(y), y=str(y))
    for a in ys:
        for b in ys:
            rep.add("additive", element(a) @ element(b) == element(Fraction(a) + Fraction(b)),
                    y1=str(a), y2=str(b))
    return rep


def verify_type1_formula(n: int = 4, i: int = 0, ys=(1, 2, 5)) -> Report:
    tau = OuterAuto(n)
    j = tau.root_image(i)
    if abs(i - j) < 2:
        raise ValueError("roots a and tau(a) must be orthogonal for the Type1 formula")
    return _verify_formula(lambda y: type1_element(n, i, y), tau, n, ys)


def verify_type2_formula(n: int = 3, ys=(1, 2, 3)) -> Report:
    if n % 2 == 0:
        raise ValueError("Type2 blocks need an odd size matrix")
    i = n // 2 - 1
    tau = OuterAuto(n)
    rep = Report(True)
    # the commutator of the two root groups is a root group of the sum
    base = beta_element(n, i, 1) - ExactMatrix.identity(n)
    for c in (1, 2, Fraction(-3, 2)):
        rep.add("commutator normalization", beta_element(n, i, c) - ExactMatrix.identity(n) == base.scale(c),
                c=str(c))
    sub = _verify_formula(lambda y: type2_element(n, i, y), tau, n, ys)
    rep.checks += sub.checks
    rep.ok = rep.ok and sub.ok
    return rep


# ---------------------------------------------------------------------------
# twisted conjugation to the torus


def _solve_levels(n: int, residual: Callable[[dict], ExactMatrix], unknowns: dict) -> dict:
    """Solve ``residual(values) = 0`` above the diagonal, one superdiagonal at a time.

    ``unknowns[k]`` lists the variable names living on level ``k``; the residual
    must be affine in them once lower levels are fixed.
    """
    values = {name: Fraction(0) for names in unknowns.values() for name in names}
    for k in range(1, n):
        names = unknowns.get(k, [])
        base = residual(values).level(k)
        cols = []
        for name in names:
            trial = dict(values)
            trial[name] = Fraction(1)
            cols.append([a - b for a, b in zip(residual(trial).level(k), base)])
        sol = _linalg.solve(cols, [-x for x in base]) if names else (() if not any(base) else None)
        if sol is None:
            raise NotSemisimple(f"no solution on superdiagonal {k}")
        for name, v in zip(names, sol):
            values[name] = v
    return values


def _unipotent(n: int, values: dict) -> ExactMatrix:
    return ExactMatrix([[1 if i == j else values.get((i, j), 0) if j > i else 0
                         for j in range(n)] for i in range(n)])


def is_diagonalizable_upper(a: ExactMatrix) -> bool:
    """An upper triangular matrix is diagonalizable iff prod (a - l) over distinct diagonal l vanishes."""
    n = a.n
    out = ExactMatrix.identity(n)
    for lam in sorted(set(a.diagonal())):
        out = out @ (a - ExactMatrix.identity(n).scale(lam))
    return all(x == 0 for r in out.rows for x in r)


def semisimple_to_torus(h: ExactMatrix, tau: OuterAuto) -> tuple[ExactMatrix, ExactMatrix]:
    """Find unipotent upper ``b`` with ``b^{-1} h tau(b)`` diagonal; returns ``(b, t)``."""
    if not h.is_upper() or h.det() == 0:
        raise ValueError("h must be an invertible upper triangular matrix")
    if not is_diagonalizable_upper(h @ tau(h)):
        raise NotSemisimple("(h tau)^2 is not semisimple")
    n = h.n
    t = ExactMatrix.diag(h.diagonal())
    unknowns = {k: [(i, i + k) for i in range(n - k)] for k in range(1, n)}

    def residual(values):
        u = _unipotent(n, values)
        return h @ tau(u) - u @ t

    values = _solve_levels(n, residual, unknowns)
    b = _unipotent(n, values)
    result = b.inverse() @ h @ tau(b)
    if not result.is_diagonal():
        raise NotSemisimple("solver did not reach the torus")
    return b, result


def random_unipotent(n: int, rng: random.Random) -> ExactMatrix:
    small = [Fraction(a, b) for a in range(-3, 4) for b in (1, 2)]
    return _unipotent(n, {(i, j): rng.choice(small) for i in range(n) for j in range(i + 1, n)})


def verify_torus_round_trip(n: int, trials: int = 100, seed: int = 0, outer: bool = True) -> Report:
    """Twist a random torus element by a random unipotent and solve back to the torus."""
    rng = random.Random(seed)
    tau = outer_auto(n) if outer else OuterAuto(n, trivial=True)
    rep = Report(True)
    entries = [Fraction(a, b) for a in (-4, -2, -1, 1, 2, 3, 4) for b in (1, 2)]
    for k in range(trials):
        t = ExactMatrix.diag([rng.choice(entries) for _ in range(n)])
        u0 = random_unipotent(n, rng)
        h = u0 @ t @ tau(u0).inverse()
        b, t2 = semisimple_to_torus(h, tau)
        ok = t2 == t and b.inverse() @ h @ tau(b) == t2
        rep.add("round trip", ok, trial=k)
    rep.successes = sum(1 for c in rep.checks if c["passed"])
    return rep


# ---------------------------------------------------------------------------
# the unipotent reduction for regular nilpotents


def principal_nilpotent(tau: OuterAuto) -> ExactMatrix:
    """``sum c_i E_{i,i+1}`` with signs chosen so that ``tau(e) = e``."""
    n = tau.n
    signs = {}
    for i in range(n - 1):
        img = tau.lie(ExactMatrix.unit(n, i, i + 1))
        j = tau.root_image(i)
        s = img[j, j + 1]
        if img != ExactMatrix.unit(n, j, j + 1, s):
            raise AssertionError("tau does not map simple root vectors to simple root vectors")
        signs[i] = s
    c = [None] * (n - 1)
    for i in range(n - 1):
        j = tau.root_image(i)
        if c[i] is not None:
            continue
        c[i] = Fraction(1)
        if j == i:
            if signs[i] != 1:
                raise AssertionError("no tau-fixed principal nilpotent")
        else:
            c[j] = signs[i] * c[i]
    e = ExactMatrix.identity(n).scale(0)
    for i in range(n - 1):
        e = e + ExactMatrix.unit(n, i, i + 1, c[i])
    if tau.lie(e) != e:
        raise AssertionError("principal nilpotent is not tau-fixed")
    return e


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    from math import isqrt
    a, b = x.numerator, x.denominator
    if a < 0:
        return None
    ra, rb = isqrt(a), isqrt(b)
    return Fraction(ra, rb) if ra * ra == a and rb * rb == b else None


def scaling_torus(n: int, lam) -> ExactMatrix:
    """Diagonal ``delta`` with ``Ad(delta) e = lam e``, tau-fixed when possible."""
    lam = Fraction(lam)
    root = _rational_sqrt(lam)
    if n % 2 == 1:
        return ExactMatrix.diag([lam ** ((n + 1) // 2 - i - 1) for i in range(n)])
    if root is not None:
        return ExactMatrix.diag([root ** (n - 1 - 2 * i) for i in range(n)])
    return ExactMatrix.diag([lam ** (n - 1 - i) for i in range(n)])


def _poly_in(e: ExactMatrix, coeffs: Sequence) -> ExactMatrix:
    n = e.n
    out = ExactMatrix.identity(n)
    p = ExactMatrix.identity(n)
    for c in coeffs:
        p = p @ e
        if c:
            out = out + p.scale(c)
    return out


@dataclass
class NilpotentTrial:
    v: ExactMatrix
    u: ExactMatrix
    z: Fraction
    ok: bool


def nilpotent_reduction(n: int, lam, v_coeffs: Sequence, outer: bool = True) -> NilpotentTrial:
    """Find ``u`` in the unipotent centralizer of ``e`` with ``u g tau(u)^{-1} = delta z``."""
    tau = outer_auto(n) if outer else OuterAuto(n, trivial=True)
    e = principal_nilpotent(tau)
    delta = scaling_torus(n, lam)
    if delta @ e @ delta.inverse() != e.scale(Fraction(lam)):
        raise AssertionError("delta does not scale e by lambda")
    v = _poly_in(e, v_coeffs)
    g = v @ delta
    if (g @ tau.lie(e) @ g.inverse()) != e.scale(Fraction(lam)):
        raise AssertionError("g tau does not scale e by lambda")
    unknowns = {k: [k] for k in range(1, n)}

    def residual(values):
        u = _poly_in(e, [values[k] for k in range(1, n)])
        return u @ g @ tau(u).inverse() @ delta.inverse() - ExactMatrix.identity(n)

    try:
        values = _solve_levels(n, residual, unknowns)
    except NotSemisimple as exc:
        raise ReductionFailure(str(exc)) from exc
    u = _poly_in(e, [values[k] for k in range(1, n)])
    t = u @ g @ tau(u).inverse()
    zmat = t @ delta.inverse()
    z = zmat[0, 0]
    ok = zmat == ExactMatrix.identity(n).scale(z) and u @ e @ u.inverse() == e
    if not ok:
        raise ReductionFailure("reduced element is not delta times a central element")
    return NilpotentTrial(v, u, z, ok)


def verify_nilpotent_lemma(n: int, lam=4, trials: int = 100, seed: int = 0, outer: bool = True) -> Report:
    rng = random.Random(seed)
    rep = Report(True)
    small = [Fraction(a, b) for a in range(-3, 4) for b in (1, 2, 3)]
    for k in range(trials):
        coeffs = [rng.choice(small) for _ in range(n - 1)] if k else [0] * (n - 1)
        trial = nilpotent_reduction(n, lam, coeffs, outer)
        rep.add("reduction", trial.ok, trial=k, z=str(trial.z))
    rep.successes = sum(1 for c in rep.checks if c["passed"])
    return rep


# ---------------------------------------------------------------------------
# fixed Weyl group lifts and component groups


def weyl_fixed_permutations(n: int, outer: bool) -> list[tuple[int, ...]]:
    from itertools import permutations

    rev = tuple(range(n - 1, -1, -1))
    perms = []
    for p in permutations(range(n)):
        if not outer or all(p[rev[i]] == rev[p[i]] for i in range(n)):
            perms.append(p)
    return perms


def negative_type1(n: int, i: int, y, eps) -> ExactMatrix:
    j = outer_auto(n).root_image(i)
    return root_element(n, i + 1, i, y) @ root_element(n, j + 1, j, eps * y)


def _simple_lifts(n: int, outer: bool) -> list[ExactMatrix]:
    """tau-fixed monomial lifts of the folded simple reflections, built from fixed root groups."""
    tau = OuterAuto(n, trivial=not outer)
    lifts, done = [], set()
    for i in range(n - 1):
        j = tau.root_image(i)
        if i in done:
            continue
        done.update({i, j})
        if i == j:
            pos = lambda y, i=i: root_element(n, i, i + 1, y)
            negs = [lambda y, i=i: root_element(n, i + 1, i, y)]
        elif abs(i - j) >= 2:
            pos = lambda y, i=i: type1_element(n, i, y)
            negs = [lambda y, i=i, s=s: negative_type1(n, i, y, s) for s in (1, -1)]
        else:
            lo = min(i, j)
            pos = lambda y, lo=lo: type2_element(n, lo, y)
            negs = []
            for s, c in product((1, -1), (Fraction(1, 2), Fraction(-1, 2))):
                negs.append(lambda y, lo=lo, s=s, c=c: (root_element(n, lo + 1, lo, y)
                                                          @ root_element(n, lo + 2, lo + 1, s * y)
                                                          @ root_element(n, lo + 2, lo, c * y * y)))
        found = None
        scalars = [Fraction(a, b) for a in (1, -1, 2, -2) for b in (1, 2, 4)]
        for neg in negs:
            if tau(neg(1)) != neg(1):
                continue
            for a, c in product(scalars, scalars):
                m = pos(a) @ neg(c) @ pos(a)
                if m.is_monomial() and tau(m) == m:
                    found = m
                    break
            if found is not None:
                break
        if found is None:
            raise AssertionError(f"no monomial lift found for the folded reflection at {i}")
        lifts.append(found)
    return lifts


def torus_lattice(n: int, group: str) -> FinAbGroup:
    if group == "GL":
        return FinAbGroup.free(n)
    return FinAbGroup(n, ((1,) * n,))


def verify_fixed_group_facts(n: int, outer: bool = True, group: str = "SL") -> Report:
    rep = Report(True)
    tau = OuterAuto(n, trivial=not outer)
    fixed = weyl_fixed_permutations(n, outer)
    rep.add("fixed Weyl group order", True, order=len(fixed))
    # lifts through fixed root groups
    lifts = _simple_lifts(n, outer)
    seen = {ExactMatrix.identity(n).permutation(): ExactMatrix.identity(n)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for m in frontier:
            for s in lifts:
                x = s @ m
                p = x.permutation()
                if p not in seen:
                    seen[p] = x
                    nxt.append(x)
        frontier = nxt
    rep.add("every fixed Weyl element lifts", set(seen) == set(fixed), lifted=len(seen))
    rep.add("lifts are tau-fixed monomials of determinant 1",
            all(tau(m) == m and m.is_monomial() and m.det() == 1 for m in seen.values()))
    # component group of the fixed torus
    signs = []
    for s in product((1, -1), repeat=n):
        d = ExactMatrix.diag(s)
        if tau(d) == d and (group == "GL" or d.det() == 1):
            signs.append(s)
    cochar_rows = []
    if group == "SL":
        cochar_rows.append([1] * n)
    if outer:
        for i in range(n):
            row = [0] * n
            row[i] += 1
            row[n - 1 - i] += 1
            cochar_rows.append(row)
    basis = kernel_basis(cochar_rows, n) if cochar_rows else \
        [tuple(int(i == j) for j in range(n)) for i in range(n)]
    identity_part = {tuple((-1) ** (sum(c * b[i] for c, b in zip(coeffs, basis)) % 2) for i in range(n))
                     for coeffs in product((0, 1), repeat=len(basis))}
    matrix_pi0 = len(signs) // len(identity_part)
    rev = [[-int(i == n - 1 - j) for j in range(n)] for i in range(n)]
    action = GroupActionOnLattice.generate([rev] if outer else [], n)
    lattice_pi0 = pi0_fixed_torus(torus_lattice(n, group), action).order
    rep.add("component group matches the lattice", matrix_pi0 == lattice_pi0,
            from_matrices=matrix_pi0, from_lattice=lattice_pi0)
    return rep
