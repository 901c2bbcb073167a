"""Exact multiplicative values and characters of lattices.

A ``FormalValue`` is ``q^a * exp(2 pi i b) * prod(symbol^k)`` with ``a`` and
``b`` rational (``b`` taken mod 1) and integer symbol exponents.  Free
symbols stand for arbitrary unramified twists, so no complex numbers are
ever approximated.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .abelian import FinAbGroup, inverse_unimodular, matvec


class FormalValueError(ValueError):
    """Malformed value or character."""


@dataclass(frozen=True, order=False)
class FormalValue:
    q: Fraction = Fraction(0)
    unity: Fraction = Fraction(0)
    syms: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if type(self.q) is not Fraction:
            object.__setattr__(self, "q", Fraction(self.q))
        unity = self.unity if type(self.unity) is Fraction else Fraction(self.unity)
        if not 0 <= unity < 1:
            unity %= 1
        object.__setattr__(self, "unity", unity)
        if self.syms:
            syms = self.syms.items() if isinstance(self.syms, Mapping) else self.syms
            object.__setattr__(self, "syms", tuple(sorted((k, int(v)) for k, v in syms if v)))
        else:
            object.__setattr__(self, "syms", ())

    @classmethod
    def q_power(cls, e) -> "FormalValue":
        return cls(Fraction(e))

    @classmethod
    def root_of_unity(cls, a, b=1) -> "FormalValue":
        return cls(0, Fraction(a, b))

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "FormalValue":
        return cls(0, 0, ((name, power),))

    def __mul__(self, other: "FormalValue") -> "FormalValue":
        s = Counter(dict(self.syms))
        s.update(dict(other.syms))
        return FormalValue(self.q + other.q, self.unity + other.unity, tuple(s.items()))

    def inverse(self) -> "FormalValue":
        return FormalValue(-self.q, -self.unity, tuple((k, -v) for k, v in self.syms))

    def __truediv__(self, other: "FormalValue") -> "FormalValue":
        return self * other.inverse()

    def __pow__(self, k: int) -> "FormalValue":
        k = int(k)
        return FormalValue(self.q * k, self.unity * k, tuple((s, v * k) for s, v in self.syms))

    def is_one(self) -> bool:
        return self == ONE

    def is_q_power(self) -> bool:
        return not self.unity and not self.syms

    def sort_key(self):
        return (self.q, self.unity, self.syms)

    def __lt__(self, other: "FormalValue") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        parts = []
        if self.q:
            parts.append("q" if self.q == 1 else f"q^{{{self.q}}}")
        sign = self.unity == Fraction(1, 2)
        if self.unity and not sign:
            a, b = self.unity.numerator, self.unity.denominator
            parts.append(f"ζ_{b}" if a == 1 else f"ζ_{b}^{a}")
        for s, v in self.syms:
            parts.append(s if v == 1 else f"{s}^{v}")
        body = "·".join(parts) if parts else "1"
        return "-" + body if sign else body

    def __repr__(self) -> str:
        return f"FormalValue({self})"

    def to_json(self) -> dict:
        return {"q": str(self.q), "unity": str(self.unity), "syms": dict(self.syms)}

    @classmethod
    def from_json(cls, obj) -> "FormalValue":
        if isinstance(obj, str):
            return parse_value(obj)
        try:
            return cls(Fraction(obj.get("q", "0")), Fraction(obj.get("unity", "0")),
                       tuple(obj.get("syms", {}).items()))
        except (AttributeError, ValueError, TypeError) as exc:
            raise FormalValueError(f"malformed value {obj!r}") from exc


ONE = FormalValue()
Q = FormalValue(1)


def product_of(values: Iterable[FormalValue]) -> FormalValue:
    out = ONE
    for v in values:
        out = out * v
    return out


_EXP = r"(?:\{([^{}]+)\}|\(([^()]+)\)|(-?\d+(?:/\d+)?))"
_Q_RE = re.compile(r"^q(?:\^" + _EXP + r")?$")
_ZETA_RE = re.compile(r"^(?:ζ|zeta)_?(\d+)(?:\^" + _EXP + r")?$")
_SYM_RE = re.compile(r"^([^\W\d_][\w]*)(?:\^" + _EXP + r")?$")


def _exp(m, start: int) -> Fraction:
    groups = m.groups()[start:start + 3]
    text = next((g for g in groups if g is not None), None)
    return Fraction(1) if text is None else Fraction(text.replace(" ", ""))


def parse_value(text: str) -> FormalValue:
    """Parse ``q^{1/2}·ζ_3·η1^2``; ``*`` also separates factors, ``-`` is ``ζ_2``."""
    s = text.strip()
    if not s:
        raise FormalValueError("empty value")
    out = ONE
    if s.startswith("-"):
        out = FormalValue(0, Fraction(1, 2))
        s = s[1:].strip()
        if not s:
            raise FormalValueError("bare minus sign")
        if s == "1":
            return out
    for tok in re.split(r"[·*]", s):
        tok = tok.strip()
        try:
            if tok == "1":
                continue
            if tok == "-1":
                out = out * FormalValue(0, Fraction(1, 2))
                continue
            m = _Q_RE.match(tok)
            if m:
                out = out * FormalValue(_exp(m, 0))
                continue
            m = _ZETA_RE.match(tok)
            if m:
                out = out * FormalValue(0, _exp(m, 1) / int(m.group(1)))
                continue
            m = _SYM_RE.match(tok)
            if m:
                e = _exp(m, 1)
                if e.denominator != 1:
                    raise FormalValueError(f"symbol exponent must be an integer in {tok!r}")
                out = out * FormalValue.symbol(m.group(1), int(e))
                continue
        except (ValueError, ZeroDivisionError) as exc:
            raise FormalValueError(f"cannot parse {tok!r}") from exc
        raise FormalValueError(f"cannot parse {tok!r}")
    return out


def parse_tuple(text: str) -> list[FormalValue]:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s.strip():
        return []
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [parse_value(p) for p in parts]


def render_tuple(values: Sequence[FormalValue]) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusCharacter:
    """A homomorphism from a finitely generated abelian group to formal values."""

    domain: FinAbGroup
    values: tuple[FormalValue, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.domain.ngens:
            raise FormalValueError(f"expected {self.domain.ngens} values, got {len(self.values)}")
        for r in self.domain.relations:
            if not self.evaluate(r).is_one():
                raise FormalValueError(f"values do not kill the relation {r}")

    @classmethod
    def trivial(cls, domain: FinAbGroup) -> "TorusCharacter":
        return cls(domain, (ONE,) * domain.ngens)

    def evaluate(self, x: Sequence[int]) -> FormalValue:
        q, unity, syms = Fraction(0), Fraction(0), Counter()
        for v, k in zip(self.values, x):
            if k:
                q += k * v.q
                unity += k * v.unity
                for name, e in v.syms:
                    syms[name] += k * e
        return FormalValue(q, unity, tuple(syms.items()))

    def __mul__(self, other: "TorusCharacter") -> "TorusCharacter":
        return TorusCharacter(self.domain, tuple(a * b for a, b in zip(self.values, other.values)))

    def inverse(self) -> "TorusCharacter":
        return TorusCharacter(self.domain, tuple(v.inverse() for v in self.values))

    def pullback(self, m: Sequence[Sequence[int]], domain: FinAbGroup) -> "TorusCharacter":
        """``c o f`` where ``f`` has matrix ``m`` (rows: our coordinates, columns: ``domain`` gens)."""
        cols = [tuple(row[j] for row in m) for j in range(domain.ngens)]
        return TorusCharacter(domain, tuple(self.evaluate(c) for c in cols))

    def key(self):
        return tuple(v.sort_key() for v in self.values)

    def __str__(self) -> str:
        return render_tuple(self.values)

    def to_json(self) -> dict:
        return {"values": [str(v) for v in self.values], "exact": [v.to_json() for v in self.values]}


def random_character(domain: FinAbGroup, rng, symbols: Sequence[str] = (), height: int = 3) -> TorusCharacter:
    """Random values on the generators: half-integral q-powers, roots of unity and symbols.

    Torsion generators get roots of unity of the right order, so the
    presentation must be diagonal.
    """
    if not domain.is_diagonal():
        raise FormalValueError("random characters need a diagonal presentation")
    order = [0] * domain.ngens
    for r in domain.relations:
        for i, t in enumerate(r):
            if t:
                order[i] = abs(t)
    vals = []
    for d in order:
        if d:
            vals.append(FormalValue(0, Fraction(rng.randrange(d), d)))
            continue
        v = FormalValue(Fraction(rng.randint(-2 * height, 2 * height), 2),
                        Fraction(rng.choice([0, 0, 0, 1, 1, 2]), rng.choice([2, 3, 4])))
        if symbols and rng.random() < 0.5:
            v = v * FormalValue.symbol(rng.choice(symbols), rng.choice([-1, 1]))
        vals.append(v)
    return TorusCharacter(domain, tuple(vals))


def act(w: Sequence[Sequence[int]], c: TorusCharacter, inverse=None) -> TorusCharacter:
    """``(w.c)(x) = c(w^{-1} x)`` for an automorphism ``w`` of the domain."""
    if inverse is None:
        inverse = _group_inverse(w, c.domain)
    for r in c.domain.relations:
        if not c.domain.is_zero(matvec(w, r)):
            raise FormalValueError("automorphism does not preserve the relations")
    return c.pullback(inverse, c.domain)


def _group_inverse(w, domain: FinAbGroup):
    try:
        return inverse_unimodular(w)
    except ValueError:
        pass
    n = domain.ngens
    prev = [[int(i == j) for j in range(n)] for i in range(n)]
    cur = [list(r) for r in w]
    for _ in range(10000):
        if all(domain.equal([cur[i][j] for i in range(n)], [int(i == j) for i in range(n)])
               for j in range(n)):
            return prev
        prev = cur
        cur = [[sum(w[i][k] * prev[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    raise FormalValueError("automorphism has no inverse of finite order")


# ---------------------------------------------------------------------------


class FormalSum:
    """Finite Z-linear combination of formal values (elements of a group ring)."""

    def __init__(self, terms=None):
        c = Counter()
        for v, k in (terms.items() if isinstance(terms, Mapping) else (terms or ())):
            c[v] += k
        self.terms = {v: k for v, k in c.items() if k}

    @classmethod
    def of(cls, v: FormalValue, k: int = 1) -> "FormalSum":
        return cls({v: k})

    def __add__(self, other: "FormalSum") -> "FormalSum":
        c = Counter(self.terms)
        c.update(other.terms)
        return FormalSum(c)

    def scale(self, k) -> "FormalSum":
        return FormalSum({v: k * c for v, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalValue):
            other = FormalSum.of(other)
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for v in sorted(self.terms, key=FormalValue.sort_key):
            k = self.terms[v]
            if k == 1:
                out.append(str(v))
            else:
                out.append(f"{k}·{v}" if not v.is_one() else str(k))
        return " + ".join(out)

    __repr__ = __str__

    def to_json(self):
        return [{"coefficient": str(k), "value": str(v)}
                for v, k in sorted(self.terms.items(), key=lambda t: t[0].sort_key())]
