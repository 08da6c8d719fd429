"""Flag varieties G/B under a one-parameter subgroup s of the maximal torus.

Regular s: the fixed points are the orbit W.s, and the degree filtration on
functions of W.s is compared with the coinvariant algebra.

Non-regular s: the fixed locus is a union of smaller flag varieties indexed by
right cosets W_L w.  Each piece is modelled by the points
``(w^-1 u^-1 s, w^-1 u^-1 t)`` (u in W_L) of the diagonal orbit of (s, t) for
a regular auxiliary t, and the filtration on the sum of the component rings
is the one generated by the unit and the equivariant Chern classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import coinvariant
from .errors import DimensionMismatch, InputError, NonRegularError
from .exactlin import Echelon, Inclusion, dot, subspace_compare, vector
from .filtration import (
    ComponentSum,
    PointConfig,
    class_coordinates,
    compare_levels,
    degree_filtration,
    filtration_spans,
    global_representative_feasible,
    gr_structure_constants,
    multiplicativity_violations,
    power_filtration_levels,
    represented_values,
    restriction_space,
    ring_law_violations,
)
from .report import Report
from .rootsys import (
    LeviData,
    Orbit,
    RootSystem,
    build_root_system,
    is_regular,
    length_distribution,
    levi_decomposition,
    stabilizer_order,
    weyl_orbit,
)

# associativity is checked on all basis triples only up to this many points
RING_LAW_LIMIT = 24


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


@dataclass(frozen=True)
class FlagInput:
    root_system: RootSystem
    s: tuple
    t: Optional[tuple] = None
    lambdas: Optional[tuple] = None

    def __post_init__(self):
        rs = self.root_system
        s = vector(self.s)
        rs.check_dim(s)
        if not any(s):
            raise InputError("s must be nonzero")
        object.__setattr__(self, "s", s)
        if self.t is not None:
            t = vector(self.t)
            rs.check_dim(t)
            if not is_regular(rs, t):
                raise NonRegularError("t must be regular")
            object.__setattr__(self, "t", t)
        if self.lambdas is None:
            n = rs.ambient_dim
            lams = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        else:
            lams = tuple(vector(lam) for lam in self.lambdas)
            for lam in lams:
                rs.check_dim(lam)
            if not lams:
                raise InputError("at least one weight lambda is required")
        object.__setattr__(self, "lambdas", lams)

    @property
    def regular(self) -> bool:
        return is_regular(self.root_system, self.s)

    @classmethod
    def from_stanza(cls, stanza: dict) -> "FlagInput":
        try:
            family = stanza["family"]
            rank = int(stanza["rank"])
            s = stanza["s"]
        except KeyError as exc:
            raise InputError(f"flag stanza is missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError):
            raise InputError("flag stanza field 'rank' must be an integer") from None
        rs = build_root_system(str(family), rank)
        return cls(rs, s, stanza.get("t"), stanza.get("lambdas"))

    def echo(self) -> dict:
        return {
            "family": self.root_system.family,
            "rank": self.root_system.rank,
            "s": list(self.s),
            "t": None if self.t is None else list(self.t),
            "lambdas": [list(lam) for lam in self.lambdas],
        }


def chern_function_regular(rs: RootSystem, lam: Sequence, s: Sequence, orbit: Orbit) -> tuple:
    """Values of f_lambda(w) = -<w.lambda, s> over the orbit points.

    The point ``p`` of the orbit is labelled by the Weyl element ``w`` with
    ``w^-1 . s = p``, i.e. the inverse of its witness; with that labelling
    f_lambda is the restriction of the linear form ``-lambda``.
    """
    rs.check_dim(lam)
    rs.check_dim(s)
    lam, s = vector(lam), vector(s)
    if not is_regular(rs, s):
        raise NonRegularError("f_lambda on W.s needs a regular s")
    if orbit.base_point != s:
        raise DimensionMismatch("orbit is not the orbit of s")
    return tuple(-dot(wit.inverse().act(lam), s) for wit in orbit.witnesses)


@dataclass(frozen=True)
class ChernElement:
    weight: tuple
    degree0: tuple  # per component
    degree1: tuple  # per component: coordinates on that component's degree-1 classes
    vector: tuple  # coordinates in the component sum


@dataclass(frozen=True)
class NonRegularRing:
    levi: LeviData
    x_values: tuple  # w^-1 . s for each component
    components: ComponentSum
    chern: tuple
    grouping_consistent: bool


def chern_element(csum: ComponentSum, x_values: Sequence, lam: Sequence) -> ChernElement:
    """Equivariant first Chern class of L_lambda localised to each component.

    On the component through ``x = w^-1 . s`` the degree-0 part is the weight
    ``-<lambda, x>`` and the degree-1 part is the Gr_1 class of
    ``u -> -<lambda, w^-1 u^-1 . t>``, read in the component's graded-lex splitting.
    """
    lam = vector(lam)
    n = len(lam)
    d0, d1, parts = [], [], []
    for comp, x in zip(csum.components, x_values):
        cfg = comp.config
        c0 = -dot(lam, x)
        vals = [-dot(lam, p[n:]) for p in cfg.points]
        coords = class_coordinates(cfg, comp.basis, vals)
        degs = comp.algebra.degrees
        part = [Fraction(0)] * len(degs)
        part[0] = c0
        for k, d in enumerate(degs):
            if d == 1:
                part[k] = coords[k]
        d0.append(c0)
        d1.append(tuple(c for c, d in zip(coords, degs) if d == 1))
        parts.append(part)
    return ChernElement(lam, tuple(d0), tuple(d1), csum.join(parts))


def nonregular_ring(inp: FlagInput, max_degree: Optional[int] = None) -> NonRegularRing:
    rs = inp.root_system
    if inp.t is None:
        raise InputError("non-regular s requires t")
    if inp.regular:
        raise InputError("s is regular; use the regular pipeline")
    levi = levi_decomposition(rs, inp.s)
    configs, xs = [], []
    for w in levi.coset_reps:
        pts = []
        for u in levi.w_l:
            v = (u * w).inverse()  # w^-1 u^-1
            pts.append(v.act(inp.s) + v.act(inp.t))
        configs.append(PointConfig(tuple(pts)))
        xs.append(w.inverse().act(inp.s))

    # the same components, found by grouping the diagonal orbit by its first half
    groups: dict = {}
    for v in rs.elements():
        x = v.act(inp.s)
        groups.setdefault(x, set()).add(x + v.act(inp.t))
    consistent = len(groups) == len(configs) and all(
        set(cfg.points) == groups.get(x, set()) for cfg, x in zip(configs, xs)
    )

    csum = ComponentSum.from_configs(configs, max_degree)
    chern = tuple(chern_element(csum, xs, lam) for lam in inp.lambdas)
    return NonRegularRing(levi, tuple(xs), csum, chern, consistent)


def flag_report(inp: FlagInput, max_degree: Optional[int] = None) -> Report:
    if not inp.regular and inp.t is None:
        raise InputError("non-regular s requires t")
    report = Report("flag", inp.echo())
    if inp.regular:
        _regular_report(inp, report, max_degree)
    else:
        _nonregular_report(inp, report, max_degree)
    return report


def _regular_report(inp: FlagInput, report: Report, max_degree) -> None:
    rs, s = inp.root_system, inp.s
    report.job["case"] = "regular"

    orbit = weyl_orbit(rs, s)
    sec = report.section("orbit")
    stab = stabilizer_order(rs, s)
    sec.update(size=len(orbit), weyl_order=rs.order, stabilizer_order=stab, points=list(orbit.points))
    report.check("orbit", "orbit size times stabilizer equals |W|", len(orbit) * stab == rs.order,
                 f"{len(orbit)} * {stab} vs {rs.order}")

    cfg = PointConfig(orbit.points)
    profile, basis = degree_filtration(cfg, max_degree)
    sec = report.section("profile")
    sec.update(dims=list(profile.dims), gr_dims=list(profile.gr_dims), graded_basis=basis.render())
    report.check("profile", "sum of graded dimensions equals number of fixed points",
                 sum(profile.gr_dims) == len(cfg), f"{sum(profile.gr_dims)} vs {len(cfg)}")
    bad = multiplicativity_violations(cfg, basis)
    report.check("profile", "F_i * F_j inside F_(i+j)", not bad, f"violations: {bad}" if bad else "")
    alg = gr_structure_constants(cfg, basis)
    sec["structure_constants"] = [list(q) for q in alg.quadruples()]
    if len(cfg) <= RING_LAW_LIMIT:
        laws = ring_law_violations(alg)
        report.check("profile", "Gr is commutative, associative and unital", not laws,
                     f"first violations: {laws[:3]}" if laws else "")

    verdict = coinvariant.verify_graded_iso(rs, orbit, profile)
    lengths = length_distribution(rs)
    sec = report.section("coinvariant")
    sec.update(verdict.as_dict())
    sec.pop("status")
    sec.update(invariant_degrees=list(coinvariant.fundamental_invariants(rs).degrees),
               length_distribution=list(lengths))
    report.check("coinvariant", "fundamental invariants constant on the orbit", verdict.invariants_constant)
    report.check("coinvariant", "gr_dims equal the coinvariant Hilbert function", verdict.passed,
                 "" if verdict.failing_degree is None else f"first mismatch in degree {verdict.failing_degree}")
    report.check("coinvariant", "gr_dims equal the Weyl length distribution", profile.gr_dims == lengths,
                 f"{profile.gr_dims} vs {lengths}")

    spans = filtration_spans(cfg, basis)
    f1 = Echelon(len(cfg))
    for v in spans[min(1, len(spans) - 1)]:
        f1.add(v)
    sec = report.section("chern")
    funcs = []
    entries = []
    for lam in inp.lambdas:
        vals = chern_function_regular(rs, lam, s, orbit)
        funcs.append(vals)
        entries.append({"lambda": list(lam), "values": list(vals)})
        report.check("chern", f"f_lambda in F_1 for lambda={_fmt(lam)}", f1.contains(vals))
    sec["functions"] = entries
    for a in range(len(inp.lambdas) - 1):
        la, lb = inp.lambdas[a], inp.lambdas[a + 1]
        summed = chern_function_regular(rs, tuple(x + y for x, y in zip(la, lb)), s, orbit)
        ok = summed == tuple(x + y for x, y in zip(funcs[a], funcs[a + 1]))
        report.check("chern", f"f_lambda linear in lambda ({a}, {a + 1})", ok)

    gens = [tuple(Fraction(1) for _ in cfg.points)] + list(funcs)
    power = power_filtration_levels(cfg, gens)
    verdicts = compare_levels(power.spans, spans, len(cfg))
    sec = report.section("proposition")
    sec.update(power_dims=list(power.profile.dims), power_gr_dims=list(power.profile.gr_dims),
               level_comparison=[v.value for v in verdicts])
    report.check("proposition", "power filtration of F_1 has the degree filtration profile",
                 power.profile.dims == profile.dims, f"{power.profile.dims} vs {profile.dims}")
    report.check("proposition", "power filtration equals degree filtration level by level",
                 all(v == Inclusion.EQUAL for v in verdicts))


def _nonregular_report(inp: FlagInput, report: Report, max_degree) -> None:
    rs = inp.root_system
    report.job["case"] = "non-regular"
    ring = nonregular_ring(inp, max_degree)
    levi, csum = ring.levi, ring.components

    sec = report.section("orbit")
    sec.update(
        phi_s=list(levi.phi_s),
        levi_order=len(levi.w_l),
        cosets=len(levi.coset_reps),
        weyl_order=rs.order,
        component_x_values=list(ring.x_values),
        component_sizes=[len(c.config) for c in csum.components],
    )
    report.check("orbit", "cosets times |W_L| equals |W|", len(levi.coset_reps) * len(levi.w_l) == rs.order)
    report.check("orbit", "components are the diagonal orbit grouped by first coordinate", ring.grouping_consistent)
    report.check("orbit", "every component has |W_L| points",
                 all(len(c.config) == len(levi.w_l) for c in csum.components))

    levi_lengths = levi.levi_lengths()
    sec = report.section("profile")
    sec.update(
        component_dims=[list(c.profile.dims) for c in csum.components],
        component_gr_dims=[list(c.profile.gr_dims) for c in csum.components],
        component_graded_basis=[c.basis.render() for c in csum.components],
        component_structure_constants=[[list(q) for q in c.algebra.quadruples()] for c in csum.components],
        levi_length_distribution=list(levi_lengths),
    )
    for k, comp in enumerate(csum.components):
        report.check("profile", f"component {k} Gr matches the flag variety of the Levi factor",
                     comp.profile.gr_dims == levi_lengths, f"{comp.profile.gr_dims} vs {levi_lengths}")
        bad = multiplicativity_violations(comp.config, comp.basis)
        report.check("profile", f"component {k}: F_i * F_j inside F_(i+j)", not bad)
        if len(comp.config) <= RING_LAW_LIMIT:
            report.check("profile", f"component {k}: Gr ring laws", not ring_law_violations(comp.algebra))

    gens = [csum.unit()] + [c.vector for c in ring.chern]
    power = power_filtration_levels(csum, gens)
    sec.update(dims=list(power.profile.dims), gr_dims=list(power.profile.gr_dims))
    report.check("profile", "power filtration saturates the component sum", power.profile.total == csum.total_dim,
                 f"{power.profile.total} vs {csum.total_dim}")
    report.check("profile", "sum of component totals equals |W|", csum.total_dim == rs.order)

    hil = coinvariant.coinvariant_hilbert(rs).coefficients
    lengths = length_distribution(rs)
    sec = report.section("coinvariant")
    sec.update(hilbert=list(hil), length_distribution=list(lengths))
    report.check("coinvariant", "gr_dims equal the coinvariant Hilbert function of W",
                 power.profile.gr_dims == hil, f"{power.profile.gr_dims} vs {hil}")
    report.check("coinvariant", "gr_dims equal the Weyl length distribution", power.profile.gr_dims == lengths)

    sec = report.section("chern")
    sec["elements"] = [
        {"lambda": list(c.weight), "degree0": list(c.degree0), "degree1": [list(d) for d in c.degree1]}
        for c in ring.chern
    ]
    for c in ring.chern:
        for k, w in enumerate(levi.coset_reps):
            winv = w.inverse()
            orth = all(dot(c.weight, winv.act(a)) == 0 for a in levi.phi_s)
            vanish = not any(c.degree1[k])
            report.check("chern", f"lambda={_fmt(c.weight)} component {k}: degree-1 part vanishes iff lambda kills the component roots",
                         orth == vanish)
    for a in range(len(ring.chern) - 1):
        x, y = ring.chern[a], ring.chern[a + 1]
        lam = tuple(p + q for p, q in zip(x.weight, y.weight))
        summed = chern_element(csum, ring.x_values, lam).vector
        report.check("chern", f"Chern element linear in lambda ({a}, {a + 1})",
                     summed == tuple(p + q for p, q in zip(x.vector, y.vector)))

    pairs = [(c.config, c.basis) for c in csum.components]
    witnesses = []
    for level, elems in enumerate(power.levels):
        for k, elem in enumerate(elems):
            target = csum.split(elem)
            f = global_representative_feasible(pairs, target, level)
            witnesses.append({"level": level, "element": list(elem), "witness": None if f is None else str(f)})
            report.check("proposition", f"level {level} element {k} has a global representative of degree <= {level}",
                         f is not None)

    # diagnostics only: the naive degree filtration on the joint point set, and
    # whether degree <= i functions always land in F_i (the converse direction)
    joint = [p for c in csum.components for p in c.config.points]
    naive = degree_filtration(PointConfig(tuple(joint)), max_degree)[0]
    converse = []
    for i, span in enumerate(power.spans):
        values = [
            csum.join(represented_values(c.config, c.basis, part) for c, part in zip(csum.components, csum.split(e)))
            for e in span
        ]
        converse.append(subspace_compare(values, restriction_space(joint, i), len(joint)).value)
    sec = report.section("proposition")
    sec.update(witnesses=witnesses, naive_joint_dims=list(naive.dims), power_vs_naive_restrictions=converse)


__all__ = [
    "FlagInput",
    "ChernElement",
    "NonRegularRing",
    "chern_function_regular",
    "chern_element",
    "nonregular_ring",
    "flag_report",
]
