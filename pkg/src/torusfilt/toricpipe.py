"""Smooth complete toric varieties.

The fixed points are the maximal cones of the fan.  A polytope normal to the
fan is given by support numbers ``a`` (one per ray), meaning
``{m : <m, rho> >= -a_rho}``; its vertex for a maximal cone solves
``<v, rho> = -a_rho`` over the rays of that cone.  A generic one-parameter
subgroup gamma turns each polytope into the function ``z -> <gamma, v_z>``,
and a few polytopes together embed the fixed points in Q^m.

Equivariant cohomology is modelled by continuous conewise polynomials; the
evaluation ``g -> (sigma -> g_sigma(gamma))`` is compared with the degree
filtration level by level.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Optional, Sequence, Union

from .errors import EmbeddingError, FanError, GammaRejected, InputError
from .exactlin import (
    Inclusion,
    determinant,
    dot,
    inverse,
    mat_vec,
    nullspace,
    subspace_compare,
    transpose,
    vector,
)
from .filtration import (
    PointConfig,
    compare_levels,
    degree_filtration,
    filtration_spans,
    gr_structure_constants,
    multiplicativity_violations,
    power_filtration_levels,
    ring_law_violations,
)
from .polyring import MultiPoly, evaluate, monomials_of_degree, substitute_linear
from .report import Report

GAMMA_SEARCH_CAP = 1000


def _fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"
RING_LAW_LIMIT = 24


@dataclass(frozen=True)
class Fan:
    rays: tuple  # integer vectors
    max_cones: tuple  # sorted tuples of ray indices
    ray_labels: Optional[tuple] = None  # names used in the input, for messages

    def ray_name(self, i: int) -> str:
        return str(self.ray_labels[i] if self.ray_labels else i)

    def face_name(self, face: Sequence[int]) -> str:
        return "{" + ",".join(self.ray_name(i) for i in face) + "}"

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def cone_rays(self, k: int) -> tuple:
        return tuple(self.rays[i] for i in self.max_cones[k])

    def facets(self) -> dict:
        """Map each (n-1)-face to the maximal cones containing it."""
        out: dict = {}
        for k, cone in enumerate(self.max_cones):
            for face in combinations(cone, self.dim - 1):
                out.setdefault(face, []).append(k)
        return out

    def label(self, k: int) -> str:
        return self.face_name(self.max_cones[k])


def make_fan(rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]], ray_labels=None) -> Fan:
    try:
        rs = tuple(tuple(int(x) for x in r) for r in rays)
    except (TypeError, ValueError):
        raise FanError("rays must have integer coordinates") from None
    cones = tuple(tuple(sorted(int(i) for i in c)) for c in max_cones)
    if not rs:
        raise FanError("a fan needs at least one ray")
    return Fan(rs, cones, None if ray_labels is None else tuple(ray_labels))


def parse_fan(text: str) -> Fan:
    """Read ``ray i: v1 ... vn`` and ``cone: i j ... k`` lines; ``#`` starts a comment.

    Ray labels may be any integers; cones refer to them by label.
    """
    rays: dict = {}
    cones = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"ray\s+(-?\d+)\s*:\s*(.*)", line)
        if m:
            label = int(m.group(1))
            if label in rays:
                raise FanError(f"line {lineno}: ray {label} defined twice")
            try:
                rays[label] = tuple(int(x) for x in m.group(2).split())
            except ValueError:
                raise FanError(f"line {lineno}: ray coordinates must be integers") from None
            continue
        m = re.fullmatch(r"cone\s*:\s*(.*)", line)
        if m:
            try:
                cones.append(tuple(int(x) for x in m.group(1).replace(",", " ").split()))
            except ValueError:
                raise FanError(f"line {lineno}: cone entries must be ray labels") from None
            continue
        raise FanError(f"line {lineno}: expected 'ray i: ...' or 'cone: ...', got {raw.strip()!r}")
    labels = sorted(rays)
    index = {lab: k for k, lab in enumerate(labels)}
    try:
        idx_cones = [[index[lab] for lab in c] for c in cones]
    except KeyError as exc:
        raise FanError(f"cone refers to undefined ray {exc.args[0]}") from None
    return make_fan([rays[lab] for lab in labels], idx_cones, labels)


def validate_fan(fan: Fan) -> Fan:
    """Check smoothness and completeness; raise :class:`FanError` naming the culprit."""
    n = fan.dim
    if n < 1 or any(len(r) != n for r in fan.rays):
        raise FanError("rays must all have the same positive dimension")
    for i, r in enumerate(fan.rays):
        if gcd(*r) != 1:
            raise FanError(f"ray {fan.ray_name(i)} = {r} is not primitive", where=(i,))
    if len(set(fan.rays)) != len(fan.rays):
        raise FanError("a ray is listed twice")
    if not fan.max_cones:
        raise FanError("a fan needs at least one maximal cone")
    if len(set(fan.max_cones)) != len(fan.max_cones):
        raise FanError("a maximal cone is listed twice")
    for k, cone in enumerate(fan.max_cones):
        if len(cone) != n or len(set(cone)) != n:
            raise FanError(f"maximal cone {fan.label(k)} must have {n} distinct rays", where=cone)
        if any(i < 0 or i >= len(fan.rays) for i in cone):
            raise FanError(f"maximal cone {fan.label(k)} refers to a missing ray", where=cone)
        det = determinant(fan.cone_rays(k))
        if abs(det) != 1:
            raise FanError(f"cone {fan.label(k)} is not smooth: determinant {det}", where=cone)
    used = {i for cone in fan.max_cones for i in cone}
    for i in range(len(fan.rays)):
        if i not in used:
            raise FanError(f"ray {fan.ray_name(i)} lies in no maximal cone", where=(i,))
    facets = fan.facets()
    for face, owners in sorted(facets.items()):
        if len(owners) != 2:
            raise FanError(
                f"facet {fan.face_name(face)} lies in {len(owners)} maximal cone(s), expected 2",
                where=face,
            )
    # the adjacency graph of maximal cones must be connected
    seen = {0}
    stack = [0]
    adj: dict = {}
    for owners in facets.values():
        a, b = owners
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    while stack:
        k = stack.pop()
        for j in adj.get(k, []):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(fan.max_cones):
        raise FanError("maximal cones do not form a connected complete fan")
    return fan


@dataclass(frozen=True)
class SupportPolytope:
    support: tuple  # a_rho per ray

    def __post_init__(self):
        object.__setattr__(self, "support", vector(self.support))

    def __add__(self, other: "SupportPolytope") -> "SupportPolytope":
        return SupportPolytope(tuple(a + b for a, b in zip(self.support, other.support)))

    def scaled(self, c) -> "SupportPolytope":
        return SupportPolytope(tuple(Fraction(c) * a for a in self.support))


def _check_poly(fan: Fan, poly: SupportPolytope):
    if len(poly.support) != len(fan.rays):
        raise InputError(f"polytope has {len(poly.support)} support numbers but the fan has {len(fan.rays)} rays")


def cone_vertices(fan: Fan, poly: SupportPolytope) -> tuple:
    _check_poly(fan, poly)
    out = []
    for k, cone in enumerate(fan.max_cones):
        rhs = tuple(-poly.support[i] for i in cone)
        out.append(mat_vec(inverse(fan.cone_rays(k)), rhs))
    return tuple(out)


def dual_weights(fan: Fan, k: int) -> tuple:
    """The basis of M dual to the rays of maximal cone k (tangent weights up to sign)."""
    return inverse(transpose(fan.cone_rays(k)))


def gamma_rejection(fan: Fan, polys: Sequence[SupportPolytope], gamma: Sequence) -> Optional[str]:
    """Why ``gamma`` is not generic (every reason, ``; ``-joined), or ``None`` if it is accepted."""
    gamma = vector(gamma)
    if len(gamma) != fan.dim:
        return f"gamma has dimension {len(gamma)}, the fan has dimension {fan.dim}"
    if any(x.denominator != 1 for x in gamma):
        return "gamma must be an integer vector"
    reasons = []
    for k in range(len(fan.max_cones)):
        if any(dot(m, gamma) == 0 for m in dual_weights(fan, k)):
            reasons.append(f"gamma pairs to zero with a weight of cone {fan.label(k)}")
    for p, poly in enumerate(polys):
        verts = cone_vertices(fan, poly)
        seen: dict = {}
        for v in verts:
            val = dot(gamma, v)
            if val in seen and seen[val] != v:
                reasons.append(
                    f"vertices {_fmt(seen[val])} and {_fmt(v)} of polytope {p + 1} both give {val}"
                )
            seen.setdefault(val, v)
    return "; ".join(reasons) or None


def generic_gamma(fan: Fan, polys: Sequence[SupportPolytope], candidate: Union[str, Sequence] = "auto") -> tuple:
    """Accept ``candidate`` or search ``(1, k, k^2, ...)`` for k = 1, 2, ... up to the cap."""
    if isinstance(candidate, str):
        if candidate != "auto":
            raise InputError(f"gamma must be an integer vector or 'auto', got {candidate!r}")
        for k in range(1, GAMMA_SEARCH_CAP + 1):
            gamma = tuple(Fraction(k**e) for e in range(fan.dim))
            if gamma_rejection(fan, polys, gamma) is None:
                return gamma
        raise GammaRejected(f"no generic gamma of the form (1, k, k^2, ...) with k <= {GAMMA_SEARCH_CAP}")
    why = gamma_rejection(fan, polys, candidate)
    if why is not None:
        raise GammaRejected(f"gamma rejected: {why}")
    return vector(candidate)


def f_delta(fan: Fan, poly: SupportPolytope, gamma: Sequence) -> tuple:
    gamma = vector(gamma)
    return tuple(dot(gamma, v) for v in cone_vertices(fan, poly))


def is_ample(fan: Fan, poly: SupportPolytope) -> bool:
    """Strict convexity: every vertex lies strictly inside the half-spaces of rays off its cone."""
    verts = cone_vertices(fan, poly)
    for k, cone in enumerate(fan.max_cones):
        for i, r in enumerate(fan.rays):
            if i not in cone and dot(verts[k], r) <= -poly.support[i]:
                return False
    return True


@dataclass(frozen=True)
class ConewisePolynomial:
    pieces: tuple  # one MultiPoly per maximal cone
    degree: int


def _facet_constraints(fan: Fan, i: int):
    n = fan.dim
    monos = monomials_of_degree(n, i)
    rows = []
    for face, (a, b) in sorted(fan.facets().items()):
        span = [[fan.rays[r][c] for r in face] for c in range(n)]  # n x (n-1)
        subs = [substitute_linear(MultiPoly.monomial(m), span, (0,) * n) for m in monos]
        targets = sorted({mono for p in subs for mono in p.terms})
        for t in targets:
            row = [Fraction(0)] * (len(monos) * len(fan.max_cones))
            for j, p in enumerate(subs):
                c = p.coefficient(t)
                if c:
                    row[a * len(monos) + j] += c
                    row[b * len(monos) + j] -= c
            rows.append(row)
    return monos, rows


def conewise_basis(fan: Fan, i: int) -> tuple:
    """A basis of the continuous conewise homogeneous degree-i polynomials."""
    monos, rows = _facet_constraints(fan, i)
    width = len(monos) * len(fan.max_cones)
    out = []
    for v in nullspace(rows, width):
        pieces = tuple(
            MultiPoly(fan.dim, dict(zip(monos, v[k * len(monos) : (k + 1) * len(monos)])))
            for k in range(len(fan.max_cones))
        )
        out.append(ConewisePolynomial(pieces, i))
    return tuple(out)


def is_continuous(fan: Fan, g: ConewisePolynomial) -> bool:
    n = fan.dim
    for face, (a, b) in fan.facets().items():
        span = [[fan.rays[r][c] for r in face] for c in range(n)]
        if not substitute_linear(g.pieces[a] - g.pieces[b], span, (0,) * n).is_zero():
            return False
    return True


def g_tilde(fan: Fan, g: ConewisePolynomial, gamma: Sequence) -> tuple:
    return tuple(evaluate(p, gamma) for p in g.pieces)


def face_counts(fan: Fan) -> tuple:
    faces = set()
    for cone in fan.max_cones:
        for k in range(len(cone) + 1):
            faces.update(combinations(cone, k))
    counts = [0] * (fan.dim + 1)
    for f in faces:
        counts[len(f)] += 1
    return tuple(counts)


def h_vector(fan: Fan) -> tuple:
    """Coefficients (q^0 first) of sum over all cones of (q - 1)^(n - dim cone)."""
    n = fan.dim
    h = [0] * (n + 1)
    for k, fk in enumerate(face_counts(fan)):
        e = n - k
        for j in range(e + 1):
            h[j] += fk * comb(e, j) * (-1) ** (e - j)
    return tuple(h)


def conewise_dimension_formula(h: Sequence[int], n: int, i: int) -> int:
    return sum(hk * comb(i - k + n - 1, n - 1) for k, hk in enumerate(h) if i - k >= 0)


def fixed_point_config(fan: Fan, polys: Sequence[SupportPolytope], gamma: Sequence) -> PointConfig:
    values = [f_delta(fan, p, gamma) for p in polys]
    pts = [tuple(vals[k] for vals in values) for k in range(len(fan.max_cones))]
    if len(set(pts)) != len(pts):
        raise EmbeddingError(
            "the polytopes do not separate the fixed points; add polytopes so that H^2 is spanned"
        )
    labels = tuple(fan.label(k) for k in range(len(fan.max_cones)))
    return PointConfig(tuple(pts), labels)


def toric_report(
    fan: Fan, polys: Sequence[SupportPolytope], gamma: Union[str, Sequence] = "auto", max_degree: Optional[int] = None
) -> Report:
    validate_fan(fan)
    if not polys:
        raise InputError("at least one polytope is required")
    for p in polys:
        _check_poly(fan, p)
    gamma = generic_gamma(fan, polys, gamma)
    n = fan.dim
    report = Report(
        "toric",
        {
            "rays": [list(r) for r in fan.rays],
            "max_cones": [list(c) for c in fan.max_cones],
            "polytopes": [list(p.support) for p in polys],
            "gamma": list(gamma),
        },
    )

    h = h_vector(fan)
    sec = report.section("fan")
    sec.update(dim=n, max_cones=len(fan.max_cones), face_counts=list(face_counts(fan)), h_vector=list(h))
    report.check("fan", "sum of h-vector equals number of fixed points", sum(h) == len(fan.max_cones))
    report.check("fan", "h-vector is symmetric and non-negative", h == h[::-1] and min(h) >= 0)

    sec = report.section("polytopes")
    sec["polytopes"] = [
        {
            "support": list(p.support),
            "vertices": [list(v) for v in cone_vertices(fan, p)],
            "f_values": list(f_delta(fan, p, gamma)),
            "ample": is_ample(fan, p),
        }
        for p in polys
    ]

    cfg = fixed_point_config(fan, polys, gamma)
    profile, basis = degree_filtration(cfg, max_degree)
    alg = gr_structure_constants(cfg, basis)
    sec = report.section("profile")
    sec.update(
        points=list(cfg.points),
        labels=list(cfg.labels),
        dims=list(profile.dims),
        gr_dims=list(profile.gr_dims),
        graded_basis=basis.render(),
        structure_constants=[list(q) for q in alg.quadruples()],
    )
    gr = profile.gr_dims
    padded = gr + (0,) * (len(h) - len(gr))
    report.check("profile", "gr_dims equal the h-vector", padded == h, f"{gr} vs {h}")
    report.check("profile", "sum of graded dimensions equals number of maximal cones", sum(gr) == len(fan.max_cones))
    bad = multiplicativity_violations(cfg, basis)
    report.check("profile", "F_i * F_j inside F_(i+j)", not bad, f"violations: {bad}" if bad else "")
    if len(cfg) <= RING_LAW_LIMIT:
        laws = ring_law_violations(alg)
        report.check("profile", "Gr is commutative, associative and unital", not laws)

    spans = filtration_spans(cfg, basis)
    gens = [tuple(Fraction(1) for _ in cfg.points)] + [f_delta(fan, p, gamma) for p in polys]
    power = power_filtration_levels(cfg, gens)
    verdicts = compare_levels(power.spans, spans, len(cfg))
    sec = report.section("generation")
    sec.update(power_dims=list(power.profile.dims), level_comparison=[v.value for v in verdicts])
    report.check("generation", "power filtration of F_1 has the degree filtration profile",
                 power.profile.dims == profile.dims, f"{power.profile.dims} vs {profile.dims}")
    report.check("generation", "power filtration equals degree filtration level by level",
                 all(v == Inclusion.EQUAL for v in verdicts))

    top = profile.top_degree
    sec = report.section("conewise")
    dims, expected, images = [], [], []
    for i in range(top + 3):
        basis_i = conewise_basis(fan, i)
        dims.append(len(basis_i))
        expected.append(conewise_dimension_formula(h, n, i))
        report.check("conewise", f"dim A_{i} equals the free-module count", dims[-1] == expected[-1],
                     f"{dims[-1]} vs {expected[-1]}")
        if i <= top:
            report.check("conewise", f"A_{i} basis is continuous", all(is_continuous(fan, g) for g in basis_i))
            images.extend(g_tilde(fan, g, gamma) for g in basis_i)
            verdict = subspace_compare(images, spans[i], len(cfg))
            report.check("conewise", f"evaluation of A_0 + ... + A_{i} spans F_{i}", verdict == Inclusion.EQUAL,
                         verdict.value)
    sec.update(dims=dims, expected_dims=expected)
    return report


__all__ = [
    "Fan",
    "SupportPolytope",
    "ConewisePolynomial",
    "make_fan",
    "parse_fan",
    "validate_fan",
    "cone_vertices",
    "dual_weights",
    "gamma_rejection",
    "generic_gamma",
    "f_delta",
    "is_ample",
    "conewise_basis",
    "is_continuous",
    "g_tilde",
    "face_counts",
    "h_vector",
    "conewise_dimension_formula",
    "fixed_point_config",
    "toric_report",
]
