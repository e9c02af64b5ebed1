"""Lattice combinatorics for the generalized Kloosterman family.

The family is

    F(lam, x) = x_1^a_1 + ... + x_n^a_n + lam * x_1^-d_1 * ... * x_n^-d_n

and its Newton polytope Delta is the convex hull of the origin, the points
A_i = a_i * e_i and gamma = (-d_1, ..., -d_n).  The faces of Delta away from
the origin are Delta_0 = conv(A_1..A_n) and, for k >= 1, Delta_k obtained by
swapping A_k for gamma.  Every integer point lies in the cone over at least
one of them, and on that cone the weight function is linear.

Lattice points are plain tuples of ints.  Indices of faces follow the usual
convention: 0 is the "positive" face, k >= 1 the face opposite A_k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Sequence

import numpy as np

from . import kernels

Point = tuple[int, ...]


@dataclass(frozen=True)
class KloostermanFamily:
    """Exponent data (a_1..a_n; d_1..d_n) of the family."""

    a: tuple[int, ...]
    d: tuple[int, ...]

    def __init__(self, a: Sequence[int], d: Sequence[int]):
        a = tuple(int(x) for x in a)
        d = tuple(int(x) for x in d)
        if not a or len(a) != len(d):
            raise ValueError("a and d must be non-empty and of equal length")
        if min(a) < 1 or min(d) < 1:
            raise ValueError("all exponents must be positive integers")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return len(self.a)

    def support(self) -> list[Point]:
        """A_1, ..., A_n followed by gamma."""
        n = self.n
        pts = [tuple(self.a[i] if j == i else 0 for j in range(n)) for i in range(n)]
        pts.append(tuple(-x for x in self.d))
        return pts

    def A(self, i: int) -> Point:
        return tuple(self.a[i] if j == i else 0 for j in range(self.n))

    @property
    def gamma(self) -> Point:
        return tuple(-x for x in self.d)

    def __str__(self):
        return f"a={','.join(map(str, self.a))} d={','.join(map(str, self.d))}"


def _lcm(values):
    return reduce(math.lcm, values, 1)


def e_star(family: KloostermanFamily) -> int:
    if family.n == 1:
        return math.lcm(family.a[0], family.d[0])
    return _lcm(family.a) * _lcm(family.d)


def _check_point(family, v) -> Point:
    v = tuple(int(x) for x in v)
    if len(v) != family.n:
        raise ValueError(f"point {v} has length {len(v)}, expected {family.n}")
    return v


# ---------------------------------------------------------------- cones

def in_cone(family: KloostermanFamily, v: Point, k: int) -> bool:
    d = family.d
    if k == 0:
        return all(x >= 0 for x in v)
    k -= 1
    if v[k] > 0:
        return False
    # v_j - (d_j/d_k) v_k >= 0, cleared of the denominator d_k > 0
    return all(d[k] * v[j] - d[j] * v[k] >= 0 for j in range(len(v)) if j != k)


def cone_membership(family: KloostermanFamily, v: Sequence[int]) -> frozenset[int]:
    """Indices k in {0..n} with v in C(Delta_k)."""
    v = _check_point(family, v)
    cones = frozenset(k for k in range(family.n + 1) if in_cone(family, v, k))
    assert cones, f"cones fail to cover {v}"
    return cones


def _weight_on_cone(family: KloostermanFamily, v: Point, k: int) -> Fraction:
    a, d = family.a, family.d
    if family.n == 1:
        return Fraction(v[0], a[0]) if k == 0 else Fraction(-v[0], d[0])
    if k == 0:
        return sum((Fraction(x, ai) for x, ai in zip(v, a)), Fraction(0))
    k -= 1
    rest = sum((Fraction(v[i], a[i]) for i in range(family.n) if i != k), Fraction(0))
    slack = 1 + sum((Fraction(d[i], a[i]) for i in range(family.n) if i != k), Fraction(0))
    return -v[k] * slack / d[k] + rest


def weight(family: KloostermanFamily, v: Sequence[int]) -> Fraction:
    """Exact weight w(v): least c >= 0 with v in c * Delta.

    Evaluates the linear formula of every cone containing v and insists
    they agree, which catches boundary transcription slips.
    """
    v = _check_point(family, v)
    values = {_weight_on_cone(family, v, k) for k in cone_membership(family, v)}
    if len(values) != 1:
        raise AssertionError(f"cone weight formulas disagree at {v}: {sorted(values)}")
    return values.pop()


def cofacial(family: KloostermanFamily, u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff u and v share a cone, i.e. lie over a common closed face."""
    u = _check_point(family, u)
    v = _check_point(family, v)
    if not any(u) or not any(v):
        return True
    return bool(cone_membership(family, u) & cone_membership(family, v))


# ---------------------------------------------------------------- basis

def basis_cardinality_formula(family: KloostermanFamily) -> int:
    a, d = family.a, family.d
    total = math.prod(a)
    for j in range(family.n):
        total += d[j] * math.prod(a[i] for i in range(family.n) if i != j)
    return total


def basis_points(family: KloostermanFamily) -> np.ndarray:
    """Integer points of the basis set, one per row, in lexicographic order.

    Enumeration runs in the kernel layer; see kloo.kernels.
    """
    return kernels.basis_points(family.a, family.d)


def in_basis(family: KloostermanFamily, v: Sequence[int]) -> bool:
    a, d = family.a, family.d
    n = family.n
    if any(not (-d[i] < v[i] <= a[i]) for i in range(n)):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if not (d[j] * (v[i] - a[i]) <= d[i] * v[j] < d[j] * v[i] + d[i] * a[j]):
                return False
    return True


@dataclass(frozen=True)
class BasisSet:
    family: KloostermanFamily
    points: tuple[Point, ...]
    weights: tuple[Fraction, ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(zip(self.points, self.weights))


def enumerate_basis(family: KloostermanFamily) -> BasisSet:
    pts = [tuple(int(x) for x in row) for row in basis_points(family)]
    expected = basis_cardinality_formula(family)
    if len(pts) != expected:
        raise AssertionError(f"basis has {len(pts)} points, expected {expected}")
    return BasisSet(family, tuple(pts), tuple(weight(family, v) for v in pts))


# ------------------------------------------------- counting sets (n >= 2)

def _require_multivariate(family):
    if family.n < 2:
        raise ValueError("the counting sets are defined for n >= 2 only")


def enumerate_A(family: KloostermanFamily) -> list[Point]:
    """Box points whose first n-1 coordinates satisfy the pair conditions."""
    _require_multivariate(family)
    a, d = family.a, family.d
    prefix = [tuple(int(x) for x in row) for row in kernels.basis_points(a[:-1], d[:-1])]
    return [v + (t,) for v in prefix for t in range(-d[-1] + 1, a[-1] + 1)]


def enumerate_A0(family: KloostermanFamily) -> list[Point]:
    return [v for v in enumerate_A(family) if not in_basis(family, v)]


def _last_above(family, v, i):
    # v_n >= (d_n/d_i) v_i + a_n
    a, d = family.a, family.d
    return d[i] * v[-1] >= d[-1] * v[i] + d[i] * a[-1]


def _last_below(family, v, i):
    # (d_n/d_i)(v_i - a_i) > v_n
    a, d = family.a, family.d
    return d[-1] * (v[i] - a[i]) > d[i] * v[-1]


def enumerate_T_bar(family: KloostermanFamily) -> list[Point]:
    return [v for v in enumerate_A(family)
            if any(_last_above(family, v, i) for i in range(family.n - 1))]


def enumerate_S(family: KloostermanFamily) -> list[Point]:
    return [v for v in enumerate_A(family)
            if any(_last_below(family, v, i) for i in range(family.n - 1))]


def _in_M(family, v):
    a, d = family.a, family.d
    return (a[-1] - d[-1] < v[-1] <= a[-1]
            and any(-d[i] < v[i] <= 0 for i in range(family.n - 1)))


def enumerate_M(family: KloostermanFamily) -> list[Point]:
    return [v for v in enumerate_A(family) if _in_M(family, v)]


def _in_T(family, v):
    return _in_M(family, v) and not any(_last_above(family, v, i) for i in range(family.n - 1))


def enumerate_T(family: KloostermanFamily) -> list[Point]:
    return [v for v in enumerate_A(family) if _in_T(family, v)]


def _in_A(family, v):
    a, d = family.a, family.d
    n = family.n
    if any(not (-d[i] < v[i] <= a[i]) for i in range(n)):
        return False
    return in_basis(KloostermanFamily(a[:-1], d[:-1]), v[:-1]) if n > 1 else True


def _in_S(family, v):
    return _in_A(family, v) and any(_last_below(family, v, i) for i in range(family.n - 1))


def psi(family: KloostermanFamily, v: Sequence[int]) -> Point:
    """Bijection T -> S: move a_{i0} from the last coordinate to coordinate i0.

    i0 is the least index among {i < n : -d_i < v_i <= 0} minimising v_i/d_i.
    """
    _require_multivariate(family)
    v = _check_point(family, v)
    if not (_in_A(family, v) and _in_T(family, v)):
        raise ValueError(f"{v} is not in T")
    d = family.d
    candidates = [i for i in range(family.n - 1) if -d[i] < v[i] <= 0]
    i0 = min(candidates, key=lambda i: (Fraction(v[i], d[i]), i))
    u = list(v)
    u[i0] += family.a[i0]
    u[-1] -= family.a[-1]
    return tuple(u)


def phi(family: KloostermanFamily, u: Sequence[int]) -> Point:
    """Inverse of psi on S.

    j0 is the largest index among {j < n : d_n (u_j - a_j) > d_j u_n}
    maximising (u_j - a_j)/d_j.
    """
    _require_multivariate(family)
    u = _check_point(family, u)
    if not _in_S(family, u):
        raise ValueError(f"{u} is not in S")
    a, d = family.a, family.d
    candidates = [j for j in range(family.n - 1) if _last_below(family, u, j)]
    j0 = max(candidates, key=lambda j: (Fraction(u[j] - a[j], d[j]), j))
    v = list(u)
    v[j0] -= a[j0]
    v[-1] += a[-1]
    return tuple(v)


def box(family: KloostermanFamily, radius: int):
    """All integer points with |v_i| <= radius."""
    return product(range(-radius, radius + 1), repeat=family.n)
