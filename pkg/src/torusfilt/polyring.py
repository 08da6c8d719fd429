"""Multivariate polynomials with rational coefficients.

A monomial is a tuple of exponents.  Graded-lex is the one canonical order:
lower degree first, and within a degree ``x1`` beats ``x2`` (so ``x1^2``,
``x1*x2``, ``x2^2``).  Rendering lists the highest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch
from .exactlin import rational

Monomial = tuple  # tuple[int, ...]


def grlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in m))


def monomials_of_degree(nvars: int, d: int) -> tuple[Monomial, ...]:
    out = []
    for idx in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in idx:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


def monomials_up_to(nvars: int, d: int) -> tuple[Monomial, ...]:
    """All monomials of degree <= d in graded-lex order; there are C(nvars+d, nvars)."""
    if nvars < 1 or d < 0:
        raise ValueError("need nvars >= 1 and d >= 0")
    out: list[Monomial] = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    assert len(out) == comb(nvars + d, nvars)
    return tuple(out)


def monomial_value(m: Monomial, pt: Sequence):
    v = 1
    for x, e in zip(pt, m):
        if e:
            v *= x**e
    return v


def render_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


class MultiPoly:
    """Immutable polynomial in ``nvars`` variables; zero coefficients are never stored."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] = ()):
        self.nvars = nvars
        clean = {}
        for m, c in dict(terms).items():
            m = tuple(m)
            if len(m) != nvars:
                raise DimensionMismatch(f"monomial {m} in a ring with {nvars} variables")
            c = rational(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self._terms = clean

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "MultiPoly":
        return cls(len(m), {tuple(m): c})

    @classmethod
    def linear_form(cls, coeffs: Sequence, const=0) -> "MultiPoly":
        n = len(coeffs)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(m) == d for m in self._terms)

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"polynomials in {self.nvars} and {other.nvars} variables")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, 0) + c
        return MultiPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = rational(other)
            return MultiPoly(self.nvars, {m: c * v for m, v in self._terms.items()})
        self._check(other)
        t: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return MultiPoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __call__(self, pt: Sequence):
        return evaluate(self, pt)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    def __str__(self):
        return render(self)


def render(p: MultiPoly) -> str:
    """Highest degree first, graded-lex within a degree, e.g. ``3*x1^2*x2 - 1/2*x3``."""
    if p.is_zero():
        return "0"
    out = []
    for m, c in sorted(p.items(), key=lambda kv: (-sum(kv[0]), grlex_key(kv[0]))):
        mono = render_monomial(m)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def evaluate(p: MultiPoly, pt: Sequence) -> Fraction:
    if len(pt) != p.nvars:
        raise DimensionMismatch(f"point of dimension {len(pt)} for a polynomial in {p.nvars} variables")
    pt = tuple(rational(x) for x in pt)
    return sum((c * monomial_value(m, pt) for m, c in p._terms.items()), Fraction(0))


def substitute_linear(p: MultiPoly, m: Sequence[Sequence], c: Sequence) -> MultiPoly:
    """Return ``y -> p(M y + c)`` expanded.

    ``M`` has one row per variable of ``p`` and one column per new variable.
    """
    if len(m) != p.nvars or len(c) != p.nvars:
        raise DimensionMismatch("substitution does not match the number of variables")
    widths = {len(row) for row in m}
    if len(widths) > 1:
        raise DimensionMismatch("ragged substitution matrix")
    k = widths.pop() if widths else 0
    images = [MultiPoly.linear_form(row, ci) if k else MultiPoly(0, {(): ci}) for row, ci in zip(m, c)]
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    out = MultiPoly(k)
    for mono, coef in p._terms.items():
        term = MultiPoly.constant(k, coef)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def evaluation_matrix(monos: Iterable[Monomial], points: Sequence[Sequence]) -> tuple:
    """Rows indexed by monomial, columns by point."""
    return tuple(tuple(monomial_value(mono, pt) for pt in points) for mono in monos)


def from_coefficients(monos: Sequence[Monomial], coeffs: Sequence) -> MultiPoly:
    nvars = len(monos[0]) if monos else 0
    return MultiPoly(nvars, dict(zip(monos, coeffs)))
