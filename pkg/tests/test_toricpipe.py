from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torusfilt.errors import EmbeddingError, FanError, GammaRejected, InputError
from torusfilt.polyring import MultiPoly
from torusfilt.toricpipe import (
    ConewisePolynomial,
    SupportPolytope,
    cone_vertices,
    conewise_basis,
    f_delta,
    g_tilde,
    generic_gamma,
    h_vector,
    is_ample,
    is_continuous,
    make_fan,
    parse_fan,
    toric_report,
    validate_fan,
)

P1 = make_fan([(1,), (-1,)], [(0,), (1,)])
P2 = make_fan([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
H1 = make_fan([(1, 0), (0, 1), (-1, 1), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])
P1xP1 = make_fan([(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def hirzebruch(k):
    return make_fan([(1, 0), (0, 1), (-1, k), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def cube_fan(n):
    """(P^1)^n: rays +-e_i, one maximal cone per sign pattern."""
    rays = []
    for i in range(n):
        for sign in (1, -1):
            rays.append(tuple(sign * int(j == i) for j in range(n)))
    cones = [tuple(2 * i + (0 if s > 0 else 1) for i, s in enumerate(signs)) for signs in product((1, -1), repeat=n)]
    return make_fan(rays, cones)


def h_oracle(fan):
    q = sympy.symbols("q")
    faces = {f for cone in fan.max_cones for k in range(fan.dim + 1) for f in combinations(cone, k)}
    poly = sympy.Poly(sum((q - 1) ** (fan.dim - len(f)) for f in faces), q)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def test_parse_fan_with_one_based_labels():
    text = "# P2\nray 1: 1 0\nray 2: 0 1\nray 3: -1 -1\ncone: 1 2\ncone: 2 3\ncone: 1 3\n"
    fan = parse_fan(text)
    assert fan.rays == P2.rays and fan.max_cones == P2.max_cones
    assert fan.label(1) == "{2,3}"


@pytest.mark.parametrize(
    "text",
    ["ray 1: 1 0\nray 1: 0 1\n", "ray 1: 1 x\n", "cone: 1 2\n", "bogus line\n", "ray 1: 1 0\ncone: 1 9\n"],
)
def test_parse_fan_errors(text):
    with pytest.raises(FanError):
        parse_fan(text)


def test_validate_fan_examples():
    assert validate_fan(P2) is P2
    with pytest.raises(FanError, match="facet"):
        validate_fan(make_fan(P2.rays, [(0, 1), (1, 2)]))
    with pytest.raises(FanError, match="determinant 2"):
        validate_fan(make_fan([(1, 0), (1, 2)], [(0, 1)]))
    with pytest.raises(FanError, match="primitive"):
        validate_fan(make_fan([(2, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)]))


def test_repeated_or_unused_rays_are_rejected():
    with pytest.raises(FanError, match="twice"):
        validate_fan(make_fan([(1,), (-1,), (1,)], [(0,), (1,)]))
    with pytest.raises(FanError, match="no maximal cone"):
        validate_fan(make_fan(P2.rays + ((1, 1),), P2.max_cones))


def test_overlapping_cones_are_rejected():
    fan = make_fan(P2.rays + ((1, 1),), [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)])
    with pytest.raises(FanError, match="facet"):
        validate_fan(fan)


def test_disconnected_cone_graph_is_rejected():
    # two smooth three-cone cycles on disjoint rays: every facet is shared by exactly two cones,
    # but the adjacency graph has two components
    rays = [(1, 0), (0, 1), (-1, -1), (1, 1), (-1, 0), (0, -1)]
    fan = make_fan(rays, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    with pytest.raises(FanError, match="connected"):
        validate_fan(fan)


def test_cone_vertices_examples():
    assert cone_vertices(P2, SupportPolytope((0, 0, 1))) == ((0, 0), (1, 0), (0, 1))
    assert set(cone_vertices(H1, SupportPolytope((0, 0, 0, 0)))) == {(0, 0)}
    assert len(set(cone_vertices(H1, SupportPolytope((0, 0, 1, 1))))) == 4


def test_generic_gamma_examples():
    poly = [SupportPolytope((0, 0, 1))]
    assert generic_gamma(P2, poly, (1, 2)) == (1, 2)
    assert f_delta(P2, poly[0], (1, 2)) == (0, 1, 2)
    with pytest.raises(GammaRejected, match=r"vertices \(1,0\) and \(0,1\)"):
        generic_gamma(P2, poly, (1, 1))
    with pytest.raises(GammaRejected):
        generic_gamma(P2, poly, (0, 0))
    with pytest.raises(InputError):
        generic_gamma(P2, poly, "sometimes")


def test_auto_gamma_is_deterministic():
    polys = [SupportPolytope((0, 0, 1, 1)), SupportPolytope((0, 1, 1, 0))]
    assert generic_gamma(H1, polys, "auto") == generic_gamma(H1, polys, "auto") == (1, 2)


def test_f_delta_of_zero_polytope():
    assert f_delta(H1, SupportPolytope((0, 0, 0, 0)), (1, 2)) == (0, 0, 0, 0)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-3, 3), min_size=4, max_size=4),
    st.lists(st.integers(-3, 3), min_size=4, max_size=4),
    st.integers(-4, 4),
)
def test_f_delta_is_additive_and_homogeneous(a, b, c):
    gamma = (1, 3)
    fa = f_delta(H1, SupportPolytope(a), gamma)
    fb = f_delta(H1, SupportPolytope(b), gamma)
    assert f_delta(H1, SupportPolytope(a) + SupportPolytope(b), gamma) == tuple(x + y for x, y in zip(fa, fb))
    assert f_delta(H1, SupportPolytope(a).scaled(c), gamma) == tuple(c * x for x in fa)


def test_conewise_basis_examples():
    assert len(conewise_basis(P1, 1)) == 2
    assert len(conewise_basis(P1, 0)) == 1
    assert len(conewise_basis(P2, 1)) == 3


@pytest.mark.parametrize("fan", [P1, P2, H1, P1xP1, hirzebruch(2), cube_fan(3)], ids=["P1", "P2", "H1", "P1xP1", "H2", "P1^3"])
def test_conewise_linear_dimension_is_ray_count(fan):
    basis = conewise_basis(fan, 1)
    assert len(basis) == len(fan.rays)
    assert all(is_continuous(fan, g) for g in basis)


def test_g_tilde_examples():
    x = MultiPoly.variable(1, 0)
    g = ConewisePolynomial((x, MultiPoly(1)), 1)
    assert is_continuous(P1, g)
    assert g_tilde(P1, g, (1,)) == (1, 0)
    c = MultiPoly.constant(2, Fraction(7, 2))
    assert g_tilde(P2, ConewisePolynomial((c, c, c), 0), (1, 2)) == (Fraction(7, 2),) * 3
    ell = MultiPoly.linear_form((2, -1))
    assert set(g_tilde(P2, ConewisePolynomial((ell, ell, ell), 1), (1, 2))) == {0}


def test_discontinuous_piece_detected():
    x = MultiPoly.variable(1, 0)
    assert not is_continuous(P1, ConewisePolynomial((MultiPoly.constant(1, 1), MultiPoly(1)), 0))
    assert is_continuous(P1, ConewisePolynomial((x, -x), 1))


@pytest.mark.parametrize(
    "fan,h",
    [(P2, (1, 1, 1)), (H1, (1, 2, 1)), (P1, (1, 1)), (P1xP1, (1, 2, 1)), (cube_fan(3), (1, 3, 3, 1))],
)
def test_h_vector(fan, h):
    assert h_vector(fan) == h == h_oracle(fan)


def test_ampleness_diagnostic():
    assert is_ample(P2, SupportPolytope((0, 0, 1)))
    assert not is_ample(P2, SupportPolytope((0, 0, 0)))


def test_report_examples():
    p2 = toric_report(P2, [SupportPolytope((0, 0, 1))], (1, 2))
    assert p2.overall
    assert p2.sections["profile"]["points"] == [(0,), (1,), (2,)]
    assert tuple(p2.sections["profile"]["gr_dims"]) == (1, 1, 1)
    assert p2.sections["conewise"]["dims"][1] == 3
    h1 = toric_report(H1, [SupportPolytope((0, 0, 1, 1)), SupportPolytope((0, 1, 1, 0))], "auto")
    assert h1.overall and tuple(h1.sections["profile"]["gr_dims"]) == (1, 2, 1)
    pp = toric_report(P1xP1, [SupportPolytope((0, 0, 1, 0)), SupportPolytope((0, 0, 0, 1))], "auto")
    assert pp.overall and tuple(pp.sections["profile"]["gr_dims"]) == (1, 2, 1)
    assert pp.sections["conewise"]["dims"][1] == 4


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_hirzebruch_family(k):
    report = toric_report(hirzebruch(k), [SupportPolytope((0, 0, 1, 0)), SupportPolytope((0, 0, 0, 1))], "auto")
    assert report.overall, report.failures()
    assert tuple(report.sections["profile"]["gr_dims"]) == (1, 2, 1)


def test_three_dimensional_examples():
    cube = cube_fan(3)
    polys = [SupportPolytope(tuple(int(j == 2 * i + 1) for j in range(6))) for i in range(3)]
    report = toric_report(cube, polys, "auto")
    assert report.overall, report.failures()
    assert tuple(report.sections["profile"]["gr_dims"]) == (1, 3, 3, 1)


def test_one_polytope_that_does_not_span_h2_fails_honestly():
    report = toric_report(P1xP1, [SupportPolytope((0, 0, 1, 1))], "auto")
    assert not report.overall
    assert tuple(report.sections["profile"]["gr_dims"]) == (1, 1, 1, 1)


def test_embedding_failure():
    with pytest.raises(EmbeddingError):
        toric_report(P1xP1, [SupportPolytope((0, 0, 1, 0))], "auto")


def test_support_length_mismatch():
    with pytest.raises(InputError):
        toric_report(P2, [SupportPolytope((0, 1))], "auto")
