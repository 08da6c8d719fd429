"""Classical root systems and their Weyl groups as signed permutations.

Type ``A_{n-1}`` lives on Q^n with the full permutation action (so the
coordinate sum is an invariant of degree 1).  ``B_n`` and ``C_n`` share the
signed permutation group; ``D_n`` allows only an even number of sign changes.

A root is positive when its first nonzero coordinate is positive.  With that
choice the simple roots are ``e_i - e_{i+1}`` together with ``e_n`` (B),
``2 e_n`` (C) or ``e_{n-1} + e_n`` (D).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Optional, Sequence

from .errors import CapExceeded, DimensionMismatch, UnsupportedRootSystem
from .exactlin import dot, vector

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: coordinate ``i`` goes to ``perm[i]`` with sign ``signs[i]``."""

    perm: tuple
    signs: tuple

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_matrix(cls, mat: Sequence[Sequence]) -> "WeylElement":
        n = len(mat)
        perm = [0] * n
        signs = [1] * n
        for j in range(n):
            col = [mat[i][j] for i in range(n)]
            nz = [i for i, x in enumerate(col) if x]
            if len(nz) != 1 or abs(col[nz[0]]) != 1:
                raise ValueError("not a signed permutation matrix")
            perm[j] = nz[0]
            signs[j] = int(col[nz[0]])
        return cls(tuple(perm), tuple(signs))

    def __len__(self):
        return len(self.perm)

    def act(self, v: Sequence) -> tuple:
        if len(v) != len(self.perm):
            raise DimensionMismatch(f"vector of dimension {len(v)} for a group on Q^{len(self.perm)}")
        out = [None] * len(v)
        for i, (j, e) in enumerate(zip(self.perm, self.signs)):
            out[j] = v[i] if e > 0 else -v[i]
        return tuple(out)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other).act(v) == self.act(other.act(v))
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(len(self.perm)))
        return WeylElement(perm, signs)

    def inverse(self) -> "WeylElement":
        n = len(self.perm)
        perm = [0] * n
        signs = [1] * n
        for i, (j, e) in enumerate(zip(self.perm, self.signs)):
            perm[j] = i
            signs[j] = e
        return WeylElement(tuple(perm), tuple(signs))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and all(e == 1 for e in self.signs)

    def matrix(self) -> tuple:
        n = len(self.perm)
        m = [[Fraction(0)] * n for _ in range(n)]
        for i, (j, e) in enumerate(zip(self.perm, self.signs)):
            m[j][i] = Fraction(e)
        return tuple(tuple(r) for r in m)


def _unit(n, i, c=1):
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def is_positive(root: Sequence) -> bool:
    return next(x for x in root if x) > 0


def reflect(alpha: Sequence, v: Sequence) -> tuple:
    k = 2 * dot(alpha, v) / dot(alpha, alpha)
    return tuple(x - k * a for x, a in zip(v, alpha))


def reflection(alpha: Sequence) -> WeylElement:
    n = len(alpha)
    cols = [reflect(alpha, _unit(n, j)) for j in range(n)]
    return WeylElement.from_matrix([[cols[j][i] for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    ambient_dim: int
    roots: tuple
    simple_roots: tuple
    degrees: tuple
    cap: int = field(default=DEFAULT_CAP, compare=False)

    @property
    def positive_roots(self) -> tuple:
        return tuple(r for r in self.roots if is_positive(r))

    @property
    def order(self) -> int:
        return prod(self.degrees)

    @cached_property
    def simple_reflections(self) -> tuple:
        return tuple(reflection(a) for a in self.simple_roots)

    def label(self) -> str:
        return f"{self.family}{self.rank}"

    def inversions(self, w: WeylElement) -> int:
        """Number of positive roots sent to negative roots; equals the Coxeter length."""
        return sum(1 for a in self.positive_roots if not is_positive(w.act(a)))

    @cached_property
    def _enumeration(self) -> tuple:
        if self.order > self.cap:
            raise CapExceeded(f"|W({self.label()})| = {self.order} exceeds the enumeration cap {self.cap}")
        elements, lengths = _bfs_group(self.ambient_dim, self.simple_reflections)
        assert len(elements) == self.order
        return elements, lengths

    def elements(self) -> tuple:
        """All Weyl group elements in breadth-first discovery order (nondecreasing length)."""
        return self._enumeration[0]

    def length(self, w: WeylElement) -> int:
        """Reduced-word length, read off the breadth-first enumeration."""
        return self._enumeration[1][w]

    def check_dim(self, v: Sequence):
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector of dimension {len(v)} for {self.label()} acting on Q^{self.ambient_dim}"
            )


def _bfs_group(n: int, gens: Sequence[WeylElement]):
    e = WeylElement.identity(n)
    lengths = {e: 0}
    order = [e]
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for g in gens:
            x = g * w
            if x not in lengths:
                lengths[x] = lengths[w] + 1
                order.append(x)
                queue.append(x)
    return tuple(order), lengths


def build_root_system(family: str, rank: int, cap: int = DEFAULT_CAP) -> RootSystem:
    family = family.upper()
    if family not in "ABCD" or len(family) != 1:
        raise UnsupportedRootSystem(f"unsupported root system family {family!r} (expected A, B, C or D)")
    if rank < 1 or (family == "D" and rank < 2):
        raise UnsupportedRootSystem(f"rank {rank} is not allowed for type {family}")
    if family == "A":
        n = rank + 1
    else:
        n = rank
    roots = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            v = _unit(n, i)
            v[j] = Fraction(-1)
            roots.append(tuple(v))
    if family in "BCD":
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    v = _unit(n, i, si)
                    v[j] = Fraction(si)
                    roots.append(tuple(v))
    if family in "BC":
        c = 1 if family == "B" else 2
        for i in range(n):
            roots.append(tuple(_unit(n, i, c)))
            roots.append(tuple(_unit(n, i, -c)))
    roots = tuple(sorted(set(roots), key=lambda r: tuple(-x for x in r)))

    simple = [tuple(_unit(n, i)[:i] + [Fraction(1), Fraction(-1)] + [Fraction(0)] * (n - i - 2)) for i in range(n - 1)]
    if family == "B":
        simple.append(tuple(_unit(n, n - 1)))
    elif family == "C":
        simple.append(tuple(_unit(n, n - 1, 2)))
    elif family == "D":
        v = [Fraction(0)] * n
        v[n - 2] = v[n - 1] = Fraction(1)
        simple.append(tuple(v))

    if family == "A":
        degrees = tuple(range(1, n + 1))
    elif family in "BC":
        degrees = tuple(range(2, 2 * n + 1, 2))
    else:
        degrees = tuple(range(2, 2 * n - 1, 2)) + (n,)

    expected = {"A": n * (n - 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1)}[family]
    assert len(roots) == expected, (family, rank, len(roots))
    return RootSystem(family, rank, n, roots, tuple(simple), degrees, cap)


@dataclass(frozen=True)
class Orbit:
    base_point: tuple
    points: tuple
    witnesses: tuple  # witnesses[k].act(base_point) == points[k]

    def __len__(self):
        return len(self.points)


def weyl_orbit(rs: RootSystem, v: Sequence) -> Orbit:
    """Breadth-first closure of ``v`` under the simple reflections, in generator order."""
    rs.check_dim(v)
    v = vector(v)
    e = WeylElement.identity(rs.ambient_dim)
    seen = {v: e}
    points = [v]
    queue = deque([v])
    while queue:
        p = queue.popleft()
        for g in rs.simple_reflections:
            q = g.act(p)
            if q not in seen:
                seen[q] = g * seen[p]
                points.append(q)
                queue.append(q)
    return Orbit(v, tuple(points), tuple(seen[p] for p in points))


def stabilizer_order(rs: RootSystem, v: Sequence) -> int:
    v = vector(v)
    return sum(1 for w in rs.elements() if w.act(v) == v)


def is_regular(rs: RootSystem, v: Sequence) -> bool:
    rs.check_dim(v)
    return all(dot(a, v) != 0 for a in rs.roots)


def length_distribution(rs: RootSystem, cap: Optional[int] = None) -> tuple:
    cap = rs.cap if cap is None else cap
    if rs.order > cap:
        raise CapExceeded(f"|W({rs.label()})| = {rs.order} exceeds the enumeration cap {cap}")
    counts: dict = {}
    for w in rs.elements():
        ell = rs.length(w)
        counts[ell] = counts.get(ell, 0) + 1
    return tuple(counts.get(i, 0) for i in range(max(counts) + 1))


@dataclass(frozen=True)
class LeviData:
    phi_s: tuple  # roots vanishing on s
    w_l: tuple  # the subgroup they generate, breadth-first order
    coset_reps: tuple  # one minimal-length representative per right coset W_L w

    def coset(self, w: WeylElement) -> tuple:
        return tuple(u * w for u in self.w_l)

    def levi_lengths(self) -> tuple:
        """Length distribution of W_L for its own positive system (phi_s meets the positive roots)."""
        pos = [a for a in self.phi_s if is_positive(a)]
        counts: dict = {}
        for u in self.w_l:
            ell = sum(1 for a in pos if not is_positive(u.act(a)))
            counts[ell] = counts.get(ell, 0) + 1
        return tuple(counts.get(i, 0) for i in range(max(counts) + 1))


def levi_decomposition(rs: RootSystem, s: Sequence) -> LeviData:
    rs.check_dim(s)
    s = vector(s)
    phi_s = tuple(a for a in rs.roots if dot(a, s) == 0)
    gens = [reflection(a) for a in phi_s if is_positive(a)]
    w_l, _ = _bfs_group(rs.ambient_dim, gens)
    reps = []
    covered = set()
    for w in rs.elements():  # breadth-first, so the first hit in a coset has minimal length
        if w in covered:
            continue
        reps.append(w)
        covered.update(u * w for u in w_l)
    assert len(reps) * len(w_l) == rs.order
    return LeviData(phi_s, w_l, tuple(reps))
