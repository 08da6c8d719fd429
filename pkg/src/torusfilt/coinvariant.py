"""Weyl invariants and the Hilbert function of the coinvariant algebra S / I_W^+.

This is the oracle side of the regular flag pipeline.  Nothing in here looks at
point configurations except :func:`verify_graded_iso`, which compares the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .errors import CapExceeded, NonRegularError, UnsupportedRootSystem
from .exactlin import rank
from .filtration import FiltrationProfile
from .polyring import MultiPoly, monomials_of_degree, substitute_linear
from .rootsys import Orbit, RootSystem, is_regular

DEFAULT_DEGREE_CAP = 10


@dataclass(frozen=True)
class InvariantSet:
    generators: tuple
    degrees: tuple


@dataclass(frozen=True)
class HilbertFunction:
    coefficients: tuple

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]


def _power_sum(n: int, k: int) -> MultiPoly:
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = 1
    return MultiPoly(n, terms)


def is_invariant(p: MultiPoly, rs: RootSystem) -> bool:
    zero = (0,) * rs.ambient_dim
    return all(substitute_linear(p, g.matrix(), zero) == p for g in rs.simple_reflections)


def fundamental_invariants(rs: RootSystem) -> InvariantSet:
    n = rs.ambient_dim
    if rs.family == "A":
        gens = [_power_sum(n, k) for k in range(1, n + 1)]
    elif rs.family in ("B", "C"):
        gens = [_power_sum(n, 2 * k) for k in range(1, n + 1)]
    elif rs.family == "D":
        gens = [_power_sum(n, 2 * k) for k in range(1, n)]
        gens.append(MultiPoly.monomial((1,) * n))
    else:
        raise UnsupportedRootSystem(f"no invariants for family {rs.family!r}")
    for g in gens:
        if not is_invariant(g, rs):
            raise AssertionError(f"{g} is not invariant under W({rs.label()})")
    degrees = tuple(g.degree() for g in gens)
    assert sorted(degrees) == sorted(rs.degrees)
    return InvariantSet(tuple(gens), degrees)


def hilbert_from_degrees(degrees, nvars: int) -> tuple:
    """Coefficients of prod_i (1 - q^{d_i}) / (1 - q)^nvars, assumed to be a polynomial."""
    num = [1]
    for d in degrees:
        nxt = [0] * (len(num) + d)
        for k, c in enumerate(num):
            nxt[k] += c
            nxt[k + d] -= c
        num = nxt
    # divide by (1 - q) nvars times: each division is a running sum, exact iff q = 1 is a root
    for _ in range(nvars):
        if sum(num) != 0:
            raise ValueError("degrees do not give a polynomial Hilbert series")
        acc, out = 0, []
        for c in num:
            acc += c
            out.append(acc)
        num = out
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    if any(c < 0 for c in num):
        raise ValueError("degrees do not give a polynomial Hilbert series")
    return tuple(num)


def ideal_degree_dimension(gens: InvariantSet, nvars: int, d: int) -> int:
    """dim of the degree-d part of the ideal generated by the invariants (spanning-set rank)."""
    target = monomials_of_degree(nvars, d)
    index = {m: k for k, m in enumerate(target)}
    rows = []
    for f, df in zip(gens.generators, gens.degrees):
        if df > d or df == 0:
            continue
        for m in monomials_of_degree(nvars, d - df):
            prod = MultiPoly.monomial(m) * f
            row = [0] * len(target)
            for mono, c in prod.terms.items():
                row[index[mono]] = c
            rows.append(row)
    return rank(rows, len(target))


def coinvariant_hilbert(rs: RootSystem, degree_cap: Optional[int] = None) -> HilbertFunction:
    """Graded dimensions of S / I_W^+ by exact rank, cross-checked with the product formula."""
    cap = DEFAULT_DEGREE_CAP if degree_cap is None else degree_cap
    n = rs.ambient_dim
    inv = fundamental_invariants(rs)
    top = sum(d - 1 for d in inv.degrees)
    if top + 1 > cap:
        raise CapExceeded(f"coinvariant algebra of {rs.label()} needs degree {top + 1} > cap {cap}")
    coeffs = []
    for d in range(top + 2):
        coeffs.append(comb(n + d - 1, d) - ideal_degree_dimension(inv, n, d))
    if coeffs[-1] != 0:
        raise AssertionError(f"coinvariant algebra of {rs.label()} does not vanish in degree {top + 1}")
    coeffs.pop()
    formula = hilbert_from_degrees(inv.degrees, n)
    if tuple(coeffs) != formula:
        raise AssertionError(f"rank-based Hilbert function {coeffs} disagrees with product formula {formula}")
    return HilbertFunction(tuple(coeffs))


@dataclass(frozen=True)
class IsoVerdict:
    passed: bool
    invariants_constant: bool
    gr_dims: tuple
    hilbert: tuple
    failing_degree: Optional[int]
    invariant_values: tuple  # one constant per generator, or None where it varies

    def as_dict(self) -> dict:
        return {
            "status": "PASS" if self.passed else "FAIL",
            "invariants_constant_on_orbit": self.invariants_constant,
            "invariant_values": list(self.invariant_values),
            "gr_dims": list(self.gr_dims),
            "hilbert": list(self.hilbert),
            "failing_degree": self.failing_degree,
        }


def verify_graded_iso(rs: RootSystem, orbit: Orbit, profile: FiltrationProfile) -> IsoVerdict:
    """Check that Gr C[W.s] has the graded dimensions of S / I_W^+ and that I_W^+ dies on the orbit."""
    if not is_regular(rs, orbit.base_point):
        raise NonRegularError("graded isomorphism check needs a regular base point")
    inv = fundamental_invariants(rs)
    values = []
    for g in inv.generators:
        vals = {g(p) for p in orbit.points}
        values.append(vals.pop() if len(vals) == 1 else None)
    constant = all(v is not None for v in values)
    hil = coinvariant_hilbert(rs).coefficients
    gr = profile.gr_dims
    failing = None
    for d in range(max(len(gr), len(hil))):
        a = gr[d] if d < len(gr) else 0
        b = hil[d] if d < len(hil) else 0
        if a != b:
            failing = d
            break
    return IsoVerdict(constant and failing is None, constant, gr, hil, failing, tuple(values))

