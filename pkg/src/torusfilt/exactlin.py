"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row tuples.  Nothing here ever rounds.

Rank computations clear denominators row by row and eliminate over the
integers (fraction-free, with gcd normalisation), which is considerably
faster than pushing :class:`Fraction` objects through the inner loop.
Pivoting is always "first nonzero entry in column order", so pivot sets are
reproducible.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, InputError

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]


def rational(x) -> Fraction:
    """Coerce ints, fractions and strings such as ``"-3/4"`` to a Fraction.

    Floats are refused: they would smuggle rounding into an exact pipeline.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {x!r}") from None
    raise InputError(f"not an exact rational: {x!r}")


def vector(xs: Iterable) -> Vector:
    return tuple(rational(x) for x in xs)


def matrix(rows: Iterable[Iterable], ncols: Optional[int] = None) -> Matrix:
    """Build a rectangular matrix; ``ncols`` pins the width of an empty one."""
    m = tuple(vector(r) for r in rows)
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise DimensionMismatch(f"ragged matrix with row lengths {sorted(widths)}")
    if ncols is not None and widths and widths != {ncols}:
        raise DimensionMismatch(f"expected {ncols} columns, got {widths.pop()}")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"dot product of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def format_rational(x: Fraction) -> str:
    """Serialise as ``p/q`` always, integers included."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- integer elimination core ------------------------------------------------


def _int_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row with the same span."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    out = [int(x * den) if den != 1 else int(x) for x in row]
    g = gcd(*out) if out else 0
    if g > 1:
        out = [a // g for a in out]
    return out


def _combine(target: list[int], pivot_row: list[int], col: int) -> list[int]:
    a, b = pivot_row[col], target[col]
    new = [a * x - b * y for x, y in zip(target, pivot_row)]
    g = gcd(*new)
    if g > 1:
        new = [x // g for x in new]
    if new and any(new):
        # keep rows sign-normalised for reproducibility
        lead = next(x for x in new if x)
        if lead < 0:
            new = [-x for x in new]
    return new


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        for k in range(r + 1, len(rows)):
            if rows[k][c]:
                rows[k] = _combine(rows[k], piv, c)
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _width(m: Sequence[Sequence], ncols: Optional[int]) -> int:
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise DimensionMismatch(f"ragged matrix with row lengths {sorted(widths)}")
    if widths:
        w = widths.pop()
        if ncols is not None and ncols != w:
            raise DimensionMismatch(f"expected {ncols} columns, got {w}")
        return w
    return ncols or 0


def rank_and_pivots(m: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[int, tuple[int, ...]]:
    """Rank and the greedy left-to-right pivot columns of ``m``."""
    width = _width(m, ncols)
    _, pivots = _echelon([_int_row(r) for r in m], width)
    return len(pivots), tuple(pivots)


def rank(m: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return rank_and_pivots(m, ncols)[0]


# -- Gauss-Jordan over Fraction ----------------------------------------------


def rref(m: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with unit pivots, plus the pivot columns."""
    width = _width(m, ncols)
    rows = [list(vector(r)) for r in m]
    pivots = []
    r = 0
    for c in range(width):
        if r == len(rows):
            break
        p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        piv = rows[r]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], piv)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def affine_feasible(a: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None) -> Optional[Vector]:
    """Solve ``a x = b``; return one solution or ``None`` if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)} equations but right-hand side of length {len(b)}")
    width = _width(a, ncols)
    aug = [tuple(row) + (rational(rhs),) for row, rhs in zip(a, b)]
    red, pivots = rref(aug, width + 1)
    if pivots and pivots[-1] == width:
        return None
    x = [Fraction(0)] * width
    for row, c in zip(red, pivots):
        x[c] = row[width]
    return tuple(x)


def nullspace(m: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[Vector, ...]:
    """Basis of ``{x : m x = 0}``, one vector per free column in column order."""
    width = _width(m, ncols)
    red, pivots = rref(m, width)
    pivset = set(pivots)
    basis = []
    for free in range(width):
        if free in pivset:
            continue
        x = [Fraction(0)] * width
        x[free] = Fraction(1)
        for row, c in zip(red, pivots):
            x[c] = -row[free]
        basis.append(tuple(x))
    return tuple(basis)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    if _width(m, None) != n:
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [tuple(row) + tuple(Fraction(int(i == j)) for j in range(n)) for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def determinant(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    if _width(m, None) != n:
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [list(vector(r)) for r in m]
    det = Fraction(1)
    for c in range(n):
        p = next((k for k in range(c, n) if rows[k][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for k in range(c + 1, n):
            if rows[k][c]:
                f = rows[k][c] / rows[c][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[c])]
    return det


# -- subspaces ----------------------------------------------------------------


class Inclusion(str, enum.Enum):
    EQUAL = "equal"
    LEFT_IN_RIGHT = "left_in_right"
    RIGHT_IN_LEFT = "right_in_left"
    INCOMPARABLE = "incomparable"


def subspace_compare(gens1: Sequence[Sequence], gens2: Sequence[Sequence], dim: Optional[int] = None) -> Inclusion:
    """Compare ``span(gens1)`` with ``span(gens2)`` via three ranks."""
    width = _width(list(gens1) + list(gens2), dim)
    r1 = rank(gens1, width)
    r2 = rank(gens2, width)
    ru = rank(list(gens1) + list(gens2), width)
    if r1 == ru and r2 == ru:
        return Inclusion.EQUAL
    if r2 == ru:
        return Inclusion.LEFT_IN_RIGHT
    if r1 == ru:
        return Inclusion.RIGHT_IN_LEFT
    return Inclusion.INCOMPARABLE


def contained_in(gens1, gens2, dim=None) -> bool:
    return subspace_compare(gens1, gens2, dim) in (Inclusion.EQUAL, Inclusion.LEFT_IN_RIGHT)


class Echelon:
    """Incrementally grown row space, for greedy basis selection.

    ``add`` reduces a vector against the stored rows and keeps the residual
    if it is nonzero.  Stored rows are integer and primitive.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[tuple[int, list[int]]] = []

    def __len__(self):
        return len(self._rows)

    def _reduce(self, v: Sequence) -> list[int]:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a space of dimension {self.dim}")
        w = _int_row(v)
        for col, row in self._rows:
            if w[col]:
                w = _combine(w, row, col)
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self._reduce(v))

    def add(self, v: Sequence) -> bool:
        w = self._reduce(v)
        col = next((i for i, x in enumerate(w) if x), None)
        if col is None:
            return False
        self._rows.append((col, w))
        return True
