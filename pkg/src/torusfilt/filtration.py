"""Degree filtrations on functions of finite point sets and their associated graded rings.

For a finite set of distinct points ``Z`` in Q^n, ``F_i`` is the space of
functions on ``Z`` that are restrictions of polynomials of degree <= i.
A function is stored as its vector of values in the order of the points.
The associated graded ring ``Gr = sum F_i / F_{i-1}`` is described by a
graded class basis (monomials picked greedily in graded-lex order) and its
structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Optional, Sequence, Union

from .errors import DimensionMismatch, DuplicatePoints, InconsistentBasis, InputError
from .exactlin import (
    Echelon,
    affine_feasible,
    contained_in,
    inverse,
    subspace_compare,
    vector,
)
from .polyring import (
    Monomial,
    MultiPoly,
    monomial_value,
    monomials_of_degree,
    monomials_up_to,
    render_monomial,
)


@dataclass(frozen=True)
class PointConfig:
    points: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        pts = tuple(vector(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise InputError("a point configuration needs at least one point")
        if len({len(p) for p in pts}) != 1:
            raise DimensionMismatch("points of different dimensions")
        if len(set(pts)) != len(pts):
            raise DuplicatePoints("point configuration contains repeated points")
        if self.labels is not None and len(self.labels) != len(pts):
            raise InputError("one label per point is required")

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    def values(self, mono: Monomial) -> tuple:
        return tuple(monomial_value(mono, p) for p in self.points)

    def restrict(self, p: MultiPoly) -> tuple:
        return tuple(p(pt) for pt in self.points)


@dataclass(frozen=True)
class FiltrationProfile:
    dims: tuple

    @property
    def gr_dims(self) -> tuple:
        diffs = [self.dims[0]] + [b - a for a, b in zip(self.dims, self.dims[1:])]
        while len(diffs) > 1 and diffs[-1] == 0:
            diffs.pop()
        return tuple(diffs)

    @property
    def top_degree(self) -> int:
        return len(self.gr_dims) - 1

    @property
    def total(self) -> int:
        return self.dims[-1]


@dataclass(frozen=True)
class GradedClassBasis:
    nvars: int
    by_degree: tuple  # by_degree[j] = monomials whose classes span F_j / F_{j-1}

    @property
    def monomials(self) -> tuple:
        return tuple(m for layer in self.by_degree for m in layer)

    @property
    def degrees(self) -> tuple:
        return tuple(j for j, layer in enumerate(self.by_degree) for _ in layer)

    def up_to(self, i: int) -> tuple:
        return tuple(m for layer in self.by_degree[: i + 1] for m in layer)

    def render(self) -> list:
        return [[render_monomial(m) or "1" for m in layer] for layer in self.by_degree]


def degree_filtration(cfg: PointConfig, max_degree: Optional[int] = None):
    """Dimensions of ``F_0 <= F_1 <= ...`` and a graded class basis.

    Stops at the first degree where ``F_D`` is every function on the points.
    """
    n = len(cfg)
    cap = 2 * n if max_degree is None else max_degree
    ech = Echelon(n)
    dims = []
    layers = []
    d = 0
    while True:
        if d > cap:
            raise InputError(f"degree filtration did not saturate within degree {cap}")
        layer = []
        for mono in monomials_of_degree(cfg.ambient_dim, d):
            if ech.add(cfg.values(mono)):
                layer.append(mono)
                if len(ech) == n:
                    break
        layers.append(tuple(layer))
        dims.append(len(ech))
        if len(ech) == n:
            break
        d += 1
    return FiltrationProfile(tuple(dims)), GradedClassBasis(cfg.ambient_dim, tuple(layers))


def filtration_spans(cfg: PointConfig, basis: GradedClassBasis) -> list:
    """``spans[i]`` = value vectors of the basis monomials of degree <= i (a basis of F_i)."""
    return [[cfg.values(m) for m in basis.up_to(i)] for i in range(len(basis.by_degree))]


@dataclass(frozen=True)
class GradedAlgebra:
    """Structure constants of Gr in a graded class basis.

    ``constants[(a, b)]`` maps basis index ``c`` to the coefficient of class
    ``c`` in ``[a] * [b]``; index 0 is the class of the constant monomial.
    """

    degrees: tuple
    constants: dict = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def gr_dims(self) -> tuple:
        top = max(self.degrees)
        return tuple(self.degrees.count(j) for j in range(top + 1))

    def unit(self) -> tuple:
        return tuple(Fraction(int(k == 0)) for k in range(self.dim))

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("element does not belong to this algebra")
        out = [Fraction(0)] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                for c, v in self.constants.get((a, b), {}).items():
                    out[c] += xa * yb * v
        return tuple(out)

    def quadruples(self) -> list:
        return [
            (a, b, c, v)
            for (a, b), row in sorted(self.constants.items())
            for c, v in sorted(row.items())
        ]


def coordinates_matrix(cfg: PointConfig, basis: GradedClassBasis) -> tuple:
    """Inverse of the square matrix of basis values: maps value vectors to class coordinates."""
    monos = basis.monomials
    if len(monos) != len(cfg):
        raise InconsistentBasis(f"{len(monos)} basis monomials for {len(cfg)} points")
    cols = [cfg.values(m) for m in monos]
    square = tuple(tuple(cols[k][p] for k in range(len(monos))) for p in range(len(cfg)))
    try:
        return inverse(square)
    except ZeroDivisionError:
        raise InconsistentBasis("basis monomials are linearly dependent on the points") from None


def _int_matrix(m):
    den = lcm(*(x.denominator for row in m for x in row))
    return tuple(tuple(int(x * den) for x in row) for row in m), den


def gr_structure_constants(cfg: PointConfig, basis: GradedClassBasis) -> GradedAlgebra:
    """Multiply representatives pointwise and read off the top-degree coordinates."""
    inv_int, den = _int_matrix(coordinates_matrix(cfg, basis))
    monos = basis.monomials
    degs = basis.degrees
    vals = [tuple(int(x) if x.denominator == 1 else x for x in cfg.values(m)) for m in monos]
    top = len(basis.by_degree) - 1
    constants = {}
    for a, b in product(range(len(monos)), repeat=2):
        d = degs[a] + degs[b]
        if d > top:
            continue
        prod_vals = [x * y for x, y in zip(vals[a], vals[b])]
        coords = [sum(r * v for r, v in zip(row, prod_vals)) for row in inv_int]
        row = {}
        for c, val in enumerate(coords):
            if not val:
                continue
            if degs[c] > d:
                raise InconsistentBasis(
                    f"product of classes {a} and {b} leaves F_{d}: the basis is not a graded basis"
                )
            if degs[c] == d:
                row[c] = Fraction(val) / den
        if row:
            constants[(a, b)] = row
    return GradedAlgebra(degs, constants)


def ring_law_violations(alg: GradedAlgebra) -> list:
    """Commutativity, associativity and unit failures over all basis pairs and triples."""
    problems = []
    n = alg.dim
    e = [tuple(Fraction(int(k == j)) for k in range(n)) for j in range(n)]
    unit = alg.unit()
    for a in range(n):
        if alg.multiply(unit, e[a]) != e[a] or alg.multiply(e[a], unit) != e[a]:
            problems.append(("unit", a))
        for b in range(n):
            if alg.constants.get((a, b), {}) != alg.constants.get((b, a), {}):
                problems.append(("commutativity", a, b))
    products = {(a, b): alg.multiply(e[a], e[b]) for a in range(n) for b in range(n)}
    for a, b, c in product(range(n), repeat=3):
        if alg.multiply(products[(a, b)], e[c]) != alg.multiply(e[a], products[(b, c)]):
            problems.append(("associativity", a, b, c))
    return problems


def multiplicativity_violations(cfg: PointConfig, basis: GradedClassBasis) -> list:
    """Pairs (i, j) with i + j <= top degree for which F_i * F_j is not inside F_{i+j}."""
    spans = filtration_spans(cfg, basis)
    top = len(spans) - 1
    bad = []
    for i in range(top + 1):
        for j in range(i, top + 1 - i):
            prods = [tuple(x * y for x, y in zip(u, v)) for u in spans[i] for v in spans[j]]
            if not contained_in(prods, spans[i + j], len(cfg)):
                bad.append((i, j))
    return bad


# -- sums of component rings ---------------------------------------------------


@dataclass(frozen=True)
class Component:
    config: PointConfig
    profile: FiltrationProfile
    basis: GradedClassBasis
    algebra: GradedAlgebra


@dataclass(frozen=True)
class ComponentSum:
    """Direct sum of the graded rings Gr C[Z_w]; elements are concatenated class coordinates."""

    components: tuple

    @classmethod
    def from_configs(cls, configs: Sequence[PointConfig], max_degree: Optional[int] = None) -> "ComponentSum":
        comps = []
        for cfg in configs:
            prof, basis = degree_filtration(cfg, max_degree)
            comps.append(Component(cfg, prof, basis, gr_structure_constants(cfg, basis)))
        return cls(tuple(comps))

    @property
    def offsets(self) -> tuple:
        out, k = [], 0
        for c in self.components:
            out.append(k)
            k += len(c.config)
        return tuple(out)

    @property
    def total_dim(self) -> int:
        return sum(len(c.config) for c in self.components)

    @property
    def degrees(self) -> tuple:
        return tuple(d for c in self.components for d in c.algebra.degrees)

    def split(self, x: Sequence) -> list:
        if len(x) != self.total_dim:
            raise DimensionMismatch(f"element of length {len(x)} in a sum of total dimension {self.total_dim}")
        return [tuple(x[o : o + len(c.config)]) for o, c in zip(self.offsets, self.components)]

    def join(self, parts: Sequence[Sequence]) -> tuple:
        return tuple(v for part in parts for v in part)

    def unit(self) -> tuple:
        return self.join(c.algebra.unit() for c in self.components)

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        return self.join(
            c.algebra.multiply(px, py) for c, px, py in zip(self.components, self.split(x), self.split(y))
        )


# -- power filtration ----------------------------------------------------------


@dataclass(frozen=True)
class PowerFiltration:
    profile: FiltrationProfile
    levels: tuple  # levels[i] = spanning elements newly admitted at level i
    spans: tuple  # spans[i] = a basis of F_i


def _ambient_ops(ambient: Union[PointConfig, ComponentSum]):
    if isinstance(ambient, PointConfig):
        n = len(ambient)
        unit = (Fraction(1),) * n

        def mul(x, y):
            return tuple(a * b for a, b in zip(x, y))

        return n, unit, mul
    if isinstance(ambient, ComponentSum):
        return ambient.total_dim, ambient.unit(), ambient.multiply
    raise TypeError(f"unsupported ambient {type(ambient).__name__}")


def power_filtration_levels(
    ambient: Union[PointConfig, ComponentSum], f1_generators: Sequence[Sequence], max_steps: Optional[int] = None
) -> PowerFiltration:
    """``F_0 = span(1)``, ``F_i = F_{i-1} + span(g * h)`` for generators g and h spanning F_{i-1}."""
    n, unit, mul = _ambient_ops(ambient)
    gens = [vector(g) for g in f1_generators]
    for g in gens:
        if len(g) != n:
            raise DimensionMismatch(f"generator of length {len(g)} in an ambient ring of dimension {n}")
    if not gens or not contained_in([unit], gens, n):
        raise InputError("the generators must include the unit")
    cap = 2 * n if max_steps is None else max_steps
    ech = Echelon(n)
    ech.add(unit)
    span = [unit]
    levels = [(unit,)]
    spans = [tuple(span)]
    dims = [1]
    while dims[-1] < n:
        if len(dims) > cap:
            raise InputError(f"power filtration did not stabilise within {cap} steps")
        new = []
        for g in gens:
            for h in span:
                v = mul(g, h)
                if ech.add(v):
                    new.append(v)
        span = span + new
        levels.append(tuple(new))
        spans.append(tuple(span))
        dims.append(len(span))
        if not new:
            break
    return PowerFiltration(FiltrationProfile(tuple(dims)), tuple(levels), tuple(spans))


def power_filtration(ambient, f1_generators, max_steps=None) -> FiltrationProfile:
    return power_filtration_levels(ambient, f1_generators, max_steps).profile


def compare_levels(spans_a: Sequence[Sequence], spans_b: Sequence[Sequence], dim: int) -> list:
    """Per-level subspace verdicts for two filtrations, padding the shorter with its last level."""
    out = []
    for i in range(max(len(spans_a), len(spans_b))):
        a = spans_a[min(i, len(spans_a) - 1)]
        b = spans_b[min(i, len(spans_b) - 1)]
        out.append(subspace_compare(a, b, dim))
    return out


# -- global representatives ----------------------------------------------------


def represented_values(cfg: PointConfig, basis: GradedClassBasis, coords: Sequence) -> tuple:
    """The function on ``cfg`` whose class coordinates are ``coords`` in the fixed splitting."""
    monos = basis.monomials
    if len(coords) != len(monos):
        raise DimensionMismatch(f"{len(coords)} coordinates for a basis of size {len(monos)}")
    out = [Fraction(0)] * len(cfg)
    for m, c in zip(monos, coords):
        if c:
            for k, v in enumerate(cfg.values(m)):
                out[k] += c * v
    return tuple(out)


def class_coordinates(cfg: PointConfig, basis: GradedClassBasis, values: Sequence, inv=None) -> tuple:
    inv = coordinates_matrix(cfg, basis) if inv is None else inv
    vals = vector(values)
    if len(vals) != len(cfg):
        raise DimensionMismatch("value vector does not match the point configuration")
    return tuple(sum((r * v for r, v in zip(row, vals)), Fraction(0)) for row in inv)


@lru_cache(maxsize=64)
def _pivot_monomials(points: tuple, i: int) -> tuple:
    """Monomials of degree <= i whose value columns are greedily independent on ``points``.

    These are exactly the pivot columns of the full evaluation system, so a
    solve restricted to them returns the same free-variables-zero solution.
    """
    ech = Echelon(len(points))
    chosen = []
    for m in monomials_up_to(len(points[0]), i):
        if ech.add(tuple(monomial_value(m, p) for p in points)):
            chosen.append(m)
            if len(chosen) == len(points):
                break
    return tuple(chosen)


def global_representative_feasible(
    components: Sequence, target: Sequence[Sequence], i: int
) -> Optional[MultiPoly]:
    """Find f of degree <= i whose restriction to every component has the target class coordinates.

    ``components`` holds ``(PointConfig, GradedClassBasis)`` pairs on one ambient
    space.  Returns a witness polynomial, or ``None`` when no such f exists.
    """
    if len(components) != len(target):
        raise DimensionMismatch("one target per component is required")
    dims = {cfg.ambient_dim for cfg, _ in components}
    if len(dims) != 1:
        raise DimensionMismatch("components live in different ambient spaces")
    points, rhs = [], []
    for (cfg, basis), coords in zip(components, target):
        points.extend(cfg.points)
        rhs.extend(represented_values(cfg, basis, coords))
    monos = _pivot_monomials(tuple(points), i)
    rows = [tuple(monomial_value(m, p) for m in monos) for p in points]
    sol = affine_feasible(rows, rhs, len(monos))
    if sol is None:
        return None
    return MultiPoly(dims.pop(), dict(zip(monos, sol)))


def restriction_space(points: Sequence[Sequence], i: int) -> list:
    """A basis of the naive F_i: values of degree <= i polynomials on ``points``."""
    pts = tuple(tuple(p) for p in points)
    return [tuple(monomial_value(m, p) for p in pts) for m in _pivot_monomials(pts, i)]
