"""Exact lower-convex polygons: Hodge polygons from weights, Newton polygons
from valuations, slope multisets and pointwise comparison."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class _Infinity:
    """Valuation of zero.  Compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("kloo.INF")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __le__(self, other):
        return other is self

    def __ge__(self, other):
        return True


INF = _Infinity()


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Polygon:
    """Vertices of a lower-convex chain starting at (0, 0).

    Consecutive segments have strictly increasing slopes; collinear
    vertices are merged on construction.
    """

    vertices: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        vs = tuple((_frac(x), _frac(y)) for x, y in self.vertices)
        if not vs or vs[0] != (0, 0):
            raise ValueError("polygon must start at (0, 0)")
        merged = [vs[0]]
        for v in vs[1:]:
            if v[0] <= merged[-1][0]:
                raise ValueError("abscissae must strictly increase")
            while len(merged) >= 2 and _slope(merged[-2], merged[-1]) >= _slope(merged[-1], v):
                if _slope(merged[-2], merged[-1]) > _slope(merged[-1], v):
                    raise ValueError(f"vertices {vs} are not lower-convex")
                merged.pop()
            merged.append(v)
        object.__setattr__(self, "vertices", tuple(merged))

    @classmethod
    def from_slopes(cls, slopes: Iterable) -> Polygon:
        """Chain whose m-th unit segment has the m-th smallest slope."""
        x, y = Fraction(0), Fraction(0)
        verts = [(x, y)]
        for s in sorted(_frac(s) for s in slopes):
            x += 1
            y += s
            verts.append((x, y))
        return cls(tuple(verts))

    @property
    def degree(self) -> Fraction:
        return self.vertices[-1][0]

    def segments(self) -> list[tuple[Fraction, Fraction]]:
        """(slope, horizontal length) per segment."""
        return [(_slope(u, v), v[0] - u[0]) for u, v in zip(self.vertices, self.vertices[1:])]

    def slope_multiset(self) -> list[tuple[Fraction, int]]:
        out = []
        for s, length in self.segments():
            if length.denominator != 1:
                raise ValueError("slope multiplicities need integer segment lengths")
            out.append((s, int(length)))
        return out

    def slopes(self) -> list[Fraction]:
        """Slope sequence, ascending, with multiplicity."""
        return [s for s, m in self.slope_multiset() for _ in range(m)]

    def value_at(self, x) -> Fraction:
        x = _frac(x)
        vs = self.vertices
        if x < 0 or x > vs[-1][0]:
            raise ValueError(f"{x} outside [0, {vs[-1][0]}]")
        for u, v in zip(vs, vs[1:]):
            if x <= v[0]:
                return u[1] + _slope(u, v) * (x - u[0])
        return vs[0][1]

    def to_json(self) -> dict:
        return {
            "vertices": [[[x.numerator, x.denominator], [y.numerator, y.denominator]]
                         for x, y in self.vertices],
            "slopes": [[s.numerator, s.denominator, m] for s, m in self.slope_multiset()],
        }

    @classmethod
    def from_json(cls, data: dict) -> Polygon:
        return cls(tuple((Fraction(*x), Fraction(*y)) for x, y in data["vertices"]))

    def __str__(self):
        return " ".join(f"({x},{y})" for x, y in self.vertices)


def _slope(u, v) -> Fraction:
    return (v[1] - u[1]) / (v[0] - u[0])


def format_slopes(slopes: Sequence[Fraction]) -> str:
    return ", ".join(f"{s}" if m == 1 else f"{s} (x{m})" for s, m in Counter(slopes).items())


def hodge_polygon(basis) -> Polygon:
    """Hodge polygon of a BasisSet: cumulative (count, weight sum) after
    sorting the basis weights."""
    weights = list(basis.weights)
    if not weights:
        raise ValueError("empty basis")
    return Polygon.from_slopes(weights)


def newton_polygon(valuations: Sequence[tuple[int, object]]) -> Polygon:
    """Lower convex hull of (m, v_m) over entries with finite v_m.

    Entry m = 0 must be present with valuation 0; INF entries are skipped.
    Comparisons go through cross products, no division.
    """
    pts = {}
    for m, val in valuations:
        if val is INF:
            continue
        pts[int(m)] = _frac(val)
    if pts.get(0) != 0:
        raise ValueError("valuation data must contain (0, 0)")
    hull: list[tuple[Fraction, Fraction]] = []
    for x in sorted(pts):
        p = (Fraction(x), pts[x])
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return Polygon(tuple(hull))


EQUAL = "equal"
NP_ABOVE = "np_strictly_above"
VIOLATION = "incomparable_violation"


def compare(np_poly: Polygon, hp_poly: Polygon) -> str:
    """Pointwise relation of two polygons over the integers 0..degree."""
    if np_poly.degree != hp_poly.degree:
        raise ValueError(f"extents differ: {np_poly.degree} vs {hp_poly.degree}")
    strict = False
    for x in range(int(np_poly.degree) + 1):
        a, b = np_poly.value_at(x), hp_poly.value_at(x)
        if a < b:
            return VIOLATION
        strict = strict or a > b
    return NP_ABOVE if strict else EQUAL
