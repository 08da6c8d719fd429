from collections import Counter
from itertools import permutations, product

import pytest

from torusfilt.errors import CapExceeded, DimensionMismatch, UnsupportedRootSystem
from torusfilt.rootsys import (
    WeylElement,
    build_root_system,
    is_regular,
    length_distribution,
    levi_decomposition,
    stabilizer_order,
    weyl_orbit,
)


def signed_permutations(n, even_only=False):
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            if even_only and signs.count(-1) % 2:
                continue
            yield tuple(p * s for p, s in zip(perm, signs))


def inv(w):
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def nsp(w):
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] + w[j] < 0)


def length_oracle(family, n):
    """Combinatorial length formulas for S_n, B_n and D_n in window notation."""
    if family == "A":
        counts = Counter(inv(w) for w in permutations(range(n)))
    elif family in ("B", "C"):
        counts = Counter(inv(w) + nsp(w) + sum(1 for x in w if x < 0) for w in signed_permutations(n))
    else:
        counts = Counter(inv(w) + nsp(w) for w in signed_permutations(n, even_only=True))
    return tuple(counts[i] for i in range(max(counts) + 1))


@pytest.mark.parametrize(
    "family,rank,nroots,order",
    [("A", 1, 2, 2), ("A", 2, 6, 6), ("A", 3, 12, 24), ("B", 2, 8, 8), ("C", 2, 8, 8),
     ("B", 3, 18, 48), ("C", 3, 18, 48), ("D", 3, 12, 24), ("D", 4, 24, 192)],
)
def test_root_counts_and_group_orders(family, rank, nroots, order):
    rs = build_root_system(family, rank)
    assert len(rs.roots) == nroots
    assert len(rs.positive_roots) == nroots // 2
    assert rs.order == order == len(rs.elements())


def test_root_system_examples():
    a2 = build_root_system("A", 2)
    assert a2.ambient_dim == 3
    assert all(sorted(r) == [-1, 0, 1] for r in a2.roots)
    b2 = build_root_system("B", 2)
    assert set(b2.roots) == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)}
    d3 = build_root_system("D", 3)
    assert all(sorted(map(abs, r)) == [0, 1, 1] for r in d3.roots)


def test_unsupported_and_mismatched_inputs():
    with pytest.raises(UnsupportedRootSystem):
        build_root_system("G", 2)
    with pytest.raises(DimensionMismatch):
        weyl_orbit(build_root_system("A", 2), (1, 2))


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        length_distribution(build_root_system("B", 4), cap=100)


def test_orbit_examples():
    a2 = build_root_system("A", 2)
    orbit = weyl_orbit(a2, (0, 1, 3))
    assert set(orbit.points) == set(permutations((0, 1, 3)))
    assert len(weyl_orbit(a2, (1, 1, 0))) == 3
    b2 = build_root_system("B", 2)
    assert set(weyl_orbit(b2, (1, 2)).points) == {(a * x, b * y) for x, y in ((1, 2), (2, 1)) for a in (1, -1) for b in (1, -1)}
    for w, p in zip(orbit.witnesses, orbit.points):
        assert w.act(orbit.base_point) == p


def test_regularity_examples():
    assert is_regular(build_root_system("A", 2), (0, 1, 3))
    assert not is_regular(build_root_system("A", 2), (1, 1, 0))
    assert not is_regular(build_root_system("B", 2), (1, 0))


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2), ("B", 3), ("D", 3), ("D", 4)])
def test_length_distribution_matches_combinatorial_formula(family, rank):
    rs = build_root_system(family, rank)
    n = rank + 1 if family == "A" else rank
    assert length_distribution(rs) == length_oracle(family, n)


def test_length_distribution_examples():
    assert length_distribution(build_root_system("A", 1)) == (1, 1)
    assert length_distribution(build_root_system("A", 2)) == (1, 2, 2, 1)
    assert length_distribution(build_root_system("B", 2)) == (1, 2, 2, 2, 1)


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("D", 4)])
def test_length_is_number_of_inversions(family, rank):
    rs = build_root_system(family, rank)
    for w in rs.elements():
        assert rs.length(w) == rs.inversions(w)


def test_group_element_algebra():
    rs = build_root_system("B", 3)
    elems = rs.elements()
    e = WeylElement.identity(3)
    v = (1, 2, 5)
    for a in elems[:12]:
        assert (a * a.inverse()).is_identity()
        assert a * e == a == e * a
        for b in elems[:12]:
            assert (a * b).act(v) == a.act(b.act(v))
        assert WeylElement.from_matrix(a.matrix()) == a


def test_levi_examples():
    a2 = build_root_system("A", 2)
    levi = levi_decomposition(a2, (1, 1, 0))
    assert len(levi.phi_s) == 2 and len(levi.w_l) == 2 and len(levi.coset_reps) == 3
    reg = levi_decomposition(a2, (0, 1, 3))
    assert reg.phi_s == () and len(reg.w_l) == 1 and len(reg.coset_reps) == 6
    b2 = levi_decomposition(build_root_system("B", 2), (1, 0))
    assert set(b2.phi_s) == {(0, 1), (0, -1)}
    assert len(b2.w_l) == 2 and len(b2.coset_reps) == 4


@pytest.mark.parametrize("family,rank,s", [("A", 3, (1, 1, 0, 0)), ("A", 3, (2, 2, 2, 5)), ("B", 3, (1, 1, 0)), ("D", 4, (1, 1, 0, 0))])
def test_cosets_partition_the_group(family, rank, s):
    rs = build_root_system(family, rank)
    levi = levi_decomposition(rs, s)
    seen = [u for w in levi.coset_reps for u in levi.coset(w)]
    assert len(seen) == len(set(seen)) == rs.order
    assert len(levi.w_l) == stabilizer_order(rs, s)
    assert all(u.act(s) == tuple(s) for u in levi.w_l)
    # every coset rep has minimal length within its coset
    for w in levi.coset_reps:
        assert rs.length(w) == min(rs.length(u) for u in levi.coset(w))
