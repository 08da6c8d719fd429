"""Built-in property suites, one per module, run on a fixed example battery.

Each suite appends checks to a shared :class:`Report`; ``run_suite("all")``
runs every suite in order.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import coinvariant
from .errors import FanError, GammaRejected, InputError
from .exactlin import (
    Inclusion,
    determinant,
    identity,
    inverse,
    mat_vec,
    nullspace,
    rank,
    rref,
    subspace_compare,
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
from .flagpipe import FlagInput, flag_report
from .report import Report
from .rootsys import build_root_system, length_distribution, weyl_orbit
from .toricpipe import (
    SupportPolytope,
    conewise_basis,
    f_delta,
    generic_gamma,
    h_vector,
    make_fan,
    toric_report,
    validate_fan,
)

SUITES = ("exactlin", "filtration", "coinvariant", "flag", "toric")

MATRICES = (
    ((1, 2, 3), (4, 5, 6), (7, 8, 10)),
    ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    ((1, 2, 3), (2, 4, 6), (1, 0, 1)),
    ((Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 4), Fraction(1, 5))),
    ((0, 0, 1, 2), (0, 1, 0, 3), (1, 1, 1, 1)),
)

POINT_SETS = {
    "three points on a line": ((0,), (1,), (3,)),
    "unit square": ((0, 0), (1, 0), (0, 1), (1, 1)),
    "five points in the plane": ((0, 0), (2, 0), (0, 2), (1, 1), (3, 5)),
    "simplex corners in Q^3": ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
}

ROOT_SYSTEMS = (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2), ("B", 3), ("C", 3), ("D", 3))

FLAG_JOBS = (
    ("A", 2, (0, 1, 3), None),
    ("A", 2, (0, 2, 5), None),
    ("B", 2, (1, 2), None),
    ("C", 2, (1, 3), None),
    ("A", 3, (0, 1, 3, 7), None),
    ("A", 2, (1, 1, 0), (0, 1, 3)),
    ("B", 2, (1, 0), (1, 2)),
    ("A", 3, (1, 1, 1, 0), (0, 1, 3, 7)),
)

P1 = make_fan([(1,), (-1,)], [(0,), (1,)])
P2 = make_fan([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
H1 = make_fan([(1, 0), (0, 1), (-1, 1), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])
P1xP1 = make_fan([(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])
P3 = make_fan([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)], [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])

TORIC_JOBS = (
    ("P1", P1, ((0, 1),), "auto"),
    ("P2", P2, ((0, 0, 1),), (1, 2)),
    ("H1", H1, ((0, 0, 1, 1), (0, 1, 1, 0)), "auto"),
    ("P1xP1", P1xP1, ((0, 0, 1, 0), (0, 0, 0, 1)), "auto"),
    ("P3", P3, ((0, 0, 0, 1),), "auto"),
)


def _exactlin(report: Report) -> None:
    sec = "exactlin"
    for k, m in enumerate(MATRICES):
        width = len(m[0])
        r = rank(m, width)
        kernel = nullspace(m, width)
        report.check(sec, f"matrix {k}: rank + nullity equals width", r + len(kernel) == width)
        report.check(sec, f"matrix {k}: kernel vectors are annihilated",
                     all(not any(mat_vec(m, v)) for v in kernel))
        red, pivots = rref(m, width)
        report.check(sec, f"matrix {k}: reduced form has one pivot per rank", len(pivots) == r)
        if len(m) == width:
            det = determinant(m)
            report.check(sec, f"matrix {k}: nonzero determinant iff full rank", (det != 0) == (r == width))
            if det:
                inv = inverse(m)
                prod = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*inv)) for row in m)
                report.check(sec, f"matrix {k}: inverse is exact", prod == identity(width))
    a = [(1, 0, 0), (0, 1, 0)]
    report.check(sec, "subspace comparison: equal spans", subspace_compare(a, [(1, 1, 0), (1, -1, 0)]) == Inclusion.EQUAL)
    report.check(sec, "subspace comparison: strict inclusion", subspace_compare([(1, 0, 0)], a) == Inclusion.LEFT_IN_RIGHT)
    report.check(sec, "subspace comparison: incomparable",
                 subspace_compare([(0, 0, 1)], a) == Inclusion.INCOMPARABLE)


def _filtration(report: Report) -> None:
    sec = "filtration"
    for name, pts in POINT_SETS.items():
        cfg = PointConfig(pts)
        profile, basis = degree_filtration(cfg)
        report.check(sec, f"{name}: sum of gr equals number of points", sum(profile.gr_dims) == len(cfg),
                     f"gr {profile.gr_dims}")
        report.check(sec, f"{name}: F_i * F_j inside F_(i+j)", not multiplicativity_violations(cfg, basis))
        report.check(sec, f"{name}: Gr ring laws", not ring_law_violations(gr_structure_constants(cfg, basis)))
        spans = filtration_spans(cfg, basis)
        coords = [tuple(p[i] for p in cfg.points) for i in range(cfg.ambient_dim)]
        gens = [tuple(Fraction(1) for _ in cfg.points)] + coords
        power = power_filtration_levels(cfg, gens)
        verdicts = compare_levels(power.spans, spans, len(cfg))
        report.check(sec, f"{name}: coordinate powers generate the degree filtration",
                     all(v == Inclusion.EQUAL for v in verdicts))


def _coinvariant(report: Report) -> None:
    sec = "coinvariant"
    table = []
    for family, r in ROOT_SYSTEMS:
        rs = build_root_system(family, r)
        hil = coinvariant.coinvariant_hilbert(rs).coefficients
        lengths = length_distribution(rs)
        table.append({"root_system": rs.label(), "hilbert": list(hil), "length_distribution": list(lengths)})
        report.check(sec, f"{rs.label()}: Hilbert function equals length distribution", hil == lengths,
                     f"{hil}")
        report.check(sec, f"{rs.label()}: Hilbert function total equals |W|", sum(hil) == rs.order)
        report.check(sec, f"{rs.label()}: Hilbert function is palindromic", hil == hil[::-1])
        inv = coinvariant.fundamental_invariants(rs)
        s = tuple(2**i + 1 for i in range(rs.ambient_dim))
        orbit = weyl_orbit(rs, s)
        report.check(sec, f"{rs.label()}: invariants constant on a regular orbit",
                     all(len({g(p) for p in orbit.points}) == 1 for g in inv.generators))
    report.section(sec)["agreement_table"] = table


def _flag(report: Report) -> None:
    sec = "flag"
    for family, r, s, t in FLAG_JOBS:
        sub = flag_report(FlagInput(build_root_system(family, r), s, t))
        gr = sub.sections["profile"].get("gr_dims") or sub.sections["profile"].get("power_gr_dims")
        failed = ", ".join(c.name for c in sub.failures())
        label = f"{family}{r} s={s}" + ("" if t is None else f" t={t}")
        report.check(sec, f"{label}: all checks pass", sub.overall, failed or f"gr {tuple(gr)}")
    rs = build_root_system("A", 2)
    try:
        flag_report(FlagInput(rs, (1, 1, 0)))
        ok = False
    except InputError as exc:
        ok = "non-regular s requires t" in str(exc)
    report.check(sec, "non-regular s without t is rejected", ok)


def _toric(report: Report) -> None:
    sec = "toric"
    for name, fan, supports, gamma in TORIC_JOBS:
        polys = [SupportPolytope(a) for a in supports]
        sub = toric_report(fan, polys, gamma)
        failed = ", ".join(c.name for c in sub.failures())
        report.check(sec, f"{name}: all checks pass", sub.overall,
                     failed or f"gr {tuple(sub.sections['profile']['gr_dims'])}")
        h = h_vector(fan)
        report.check(sec, f"{name}: h-vector sums to the number of maximal cones", sum(h) == len(fan.max_cones))
        g = generic_gamma(fan, polys, gamma)
        for a, b in combinations(supports, 2):
            fa = f_delta(fan, SupportPolytope(a), g)
            fb = f_delta(fan, SupportPolytope(b), g)
            fab = f_delta(fan, SupportPolytope(a) + SupportPolytope(b), g)
            report.check(sec, f"{name}: f_delta additive in support numbers",
                         fab == tuple(x + y for x, y in zip(fa, fb)))
        f3 = f_delta(fan, SupportPolytope(supports[0]).scaled(3), g)
        report.check(sec, f"{name}: f_delta scales with support numbers",
                     f3 == tuple(3 * x for x in f_delta(fan, polys[0], g)))
        report.check(sec, f"{name}: dim A_0 is 1", len(conewise_basis(fan, 0)) == 1)

    def rejects(fn, exc) -> bool:
        try:
            fn()
        except exc:
            return True
        return False

    report.check(sec, "incomplete fan rejected",
                 rejects(lambda: validate_fan(make_fan(P2.rays, [(0, 1), (1, 2)])), FanError))
    report.check(sec, "non-smooth cone rejected",
                 rejects(lambda: validate_fan(make_fan([(1, 0), (1, 2)], [(0, 1)])), FanError))
    report.check(sec, "colliding gamma rejected",
                 rejects(lambda: generic_gamma(P2, [SupportPolytope((0, 0, 1))], (1, 1)), GammaRejected))
    report.check(sec, "zero gamma rejected",
                 rejects(lambda: generic_gamma(P2, [SupportPolytope((0, 0, 1))], (0, 0)), GammaRejected))


_RUNNERS = {
    "exactlin": _exactlin,
    "filtration": _filtration,
    "coinvariant": _coinvariant,
    "flag": _flag,
    "toric": _toric,
}


def run_suite(name: str) -> Report:
    if name != "all" and name not in _RUNNERS:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    report = Report("verify", {"suite": name})
    for suite in SUITES if name == "all" else (name,):
        _RUNNERS[suite](report)
    return report
