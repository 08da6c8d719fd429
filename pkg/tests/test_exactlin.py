from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torusfilt.errors import InputError
from torusfilt.exactlin import (
    Echelon,
    Inclusion,
    affine_feasible,
    contained_in,
    determinant,
    format_rational,
    identity,
    inverse,
    mat_vec,
    nullspace,
    rank,
    rank_and_pivots,
    rational,
    rref,
    subspace_compare,
)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rational_accepts_exact_inputs_only():
    assert rational(3) == 3
    assert rational("2/6") == Fraction(1, 3)
    assert rational(Fraction(5, 2)) == Fraction(5, 2)
    with pytest.raises(InputError):
        rational(0.5)
    with pytest.raises(InputError):
        rational("1/0")


def test_format_rational_always_has_denominator():
    assert format_rational(Fraction(3)) == "3/1"
    assert format_rational(Fraction(-2, 4)) == "-1/2"


def test_rank_examples():
    assert rank_and_pivots(identity(3)) == (3, (0, 1, 2))
    assert rank_and_pivots([[0] * 4, [0] * 4]) == (0, ())
    assert rank([(1, 1, 0), (1, 0, 1), (0, 1, 1)]) == 3


def test_affine_feasible_examples():
    assert affine_feasible(identity(2), (1, 2)) == (1, 2)
    assert affine_feasible([(1, 1)], (3,)) == (3, 0)
    assert affine_feasible([(1, 0), (1, 0)], (0, 1)) is None


def test_subspace_compare_examples():
    assert subspace_compare([(1, 0)], [(1, 0), (0, 1)]) == Inclusion.LEFT_IN_RIGHT
    assert subspace_compare([(1, 0), (0, 1)], [(1, 1), (1, -1)]) == Inclusion.EQUAL
    assert subspace_compare([(1, 0)], [(0, 1)]) == Inclusion.INCOMPARABLE
    assert subspace_compare([(1, 0), (0, 1)], [(2, 0)]) == Inclusion.RIGHT_IN_LEFT


def test_inverse_of_singular_matrix_raises():
    with pytest.raises(ZeroDivisionError):
        inverse([(1, 2), (2, 4)])


def test_echelon_incremental_membership():
    ech = Echelon(3)
    assert ech.add((1, 1, 0))
    assert not ech.add((2, 2, 0))
    assert ech.contains((3, 3, 0))
    assert not ech.contains((0, 0, 1))
    assert len(ech) == 1


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m, len(m[0])) == sympy.Matrix(m).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(m):
    width = len(m[0])
    kernel = nullspace(m, width)
    assert rank(m, width) + len(kernel) == width
    for v in kernel:
        assert not any(mat_vec(m, v))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    red, pivots = rref(m, len(m[0]))
    ref, ref_pivots = sympy.Matrix(m).rref()
    assert pivots == tuple(ref_pivots)
    nonzero = [row for row in red if any(row)]
    assert [tuple(sympy.Rational(x.numerator, x.denominator) for x in row) for row in nonzero] == [
        tuple(ref.row(i)) for i in range(len(nonzero))
    ]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_and_inverse(m):
    det = determinant(m)
    assert det == sympy.Matrix(m).det()
    if det:
        inv = inverse(m)
        n = len(m)
        prod = tuple(tuple(sum(m[i][k] * inv[k][j] for k in range(n)) for j in range(n)) for i in range(n))
        assert prod == identity(n)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_affine_feasible_solves_or_proves_inconsistent(m, b):
    b = b[: len(m)]
    x = affine_feasible(m, b, len(m[0]))
    augmented = [list(row) + [bi] for row, bi in zip(m, b)]
    consistent = sympy.Matrix(m).rank() == sympy.Matrix(augmented).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert mat_vec(m, x) == tuple(Fraction(v) for v in b)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3), matrices(3, 3))
def test_subspace_compare_is_consistent_with_containment(a, b):
    width = 3
    a = [row + [0] * (width - len(row)) for row in a]
    b = [row + [0] * (width - len(row)) for row in b]
    verdict = subspace_compare(a, b, width)
    left, right = contained_in(a, b, width), contained_in(b, a, width)
    expected = {
        (True, True): Inclusion.EQUAL,
        (True, False): Inclusion.LEFT_IN_RIGHT,
        (False, True): Inclusion.RIGHT_IN_LEFT,
        (False, False): Inclusion.INCOMPARABLE,
    }[(left, right)]
    assert verdict == expected
    joint = sympy.Matrix(a + b).rank()
    assert left == (joint == sympy.Matrix(b).rank())
