import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kloo.lattice import KloostermanFamily, enumerate_basis
from kloo.polygon import (
    EQUAL,
    INF,
    NP_ABOVE,
    VIOLATION,
    Polygon,
    compare,
    format_slopes,
    hodge_polygon,
    newton_polygon,
)


@pytest.mark.parametrize("a,d,slopes", [
    ((1, 1), (1, 1), [0, 1, 2]),
    ((1, 2), (1, 1), [0, Fr(1, 2), 1, Fr(3, 2), 2]),
    ((1, 1), (1, 2), [0, 1, 1, 2]),
])
def test_hodge_examples(a, d, slopes):
    assert hodge_polygon(enumerate_basis(KloostermanFamily(a, d))).slopes() == slopes


def test_newton_examples():
    assert newton_polygon([(0, 0), (1, 0), (2, 1)]).slopes() == [0, 1]
    np_ = newton_polygon([(0, 0), (1, INF), (2, 1)])
    assert np_.vertices == ((0, 0), (2, 1)) and np_.slopes() == [Fr(1, 2)] * 2
    assert newton_polygon([(0, 0), (1, 0), (2, 0), (3, 3)]).slopes() == [0, 0, 3]
    assert newton_polygon([(0, 0), (1, 5), (2, Fr(1, 2)), (3, 3)]).vertices == (
        (0, 0), (2, Fr(1, 2)), (3, 3))


def test_newton_requires_origin():
    with pytest.raises(ValueError):
        newton_polygon([(1, 0), (2, 1)])
    with pytest.raises(ValueError):
        newton_polygon([(0, 1), (2, 1)])


def test_compare_examples():
    a = Polygon.from_slopes([0, 1])
    b = Polygon.from_slopes([Fr(1, 2), Fr(1, 2)])
    assert compare(a, a) == EQUAL
    assert compare(b, a) == NP_ABOVE
    assert compare(a, b) == VIOLATION
    with pytest.raises(ValueError):
        compare(a, Polygon.from_slopes([0, 1, 2]))


def test_polygon_validation():
    with pytest.raises(ValueError):
        Polygon(((1, 0), (2, 1)))
    with pytest.raises(ValueError):
        Polygon(((0, 0), (2, 2), (3, 2)))
    with pytest.raises(ValueError):
        Polygon(((0, 0), (0, 1)))
    # collinear vertices merge but multiplicities survive
    p = Polygon(((0, 0), (1, 1), (2, 2), (3, 4)))
    assert p.vertices == ((0, 0), (2, 2), (3, 4))
    assert p.slope_multiset() == [(1, 2), (2, 1)]


def test_infinity_marker():
    assert INF > 10 ** 9 and not INF < 0 and INF == INF and INF is type(INF)()
    assert INF != 5


def test_format_slopes():
    assert format_slopes([0, Fr(1, 2), Fr(1, 2)]) == "0, 1/2 (x2)"


slope_lists = st.lists(st.fractions(min_value=0, max_value=5, max_denominator=7), min_size=1, max_size=12)


@settings(max_examples=200, deadline=None)
@given(slope_lists)
def test_from_slopes_round_trip(slopes):
    p = Polygon.from_slopes(slopes)
    assert p.slopes() == sorted(slopes)
    assert p.degree == len(slopes)
    data = json.dumps(p.to_json(), sort_keys=True)
    assert Polygon.from_json(json.loads(data)) == p
    assert json.dumps(Polygon.from_json(json.loads(data)).to_json(), sort_keys=True) == data


@settings(max_examples=200, deadline=None)
@given(st.lists(st.one_of(st.fractions(0, 6, max_denominator=5), st.just(INF)), min_size=1, max_size=10))
def test_hull_lies_below_points(vals):
    pts = [(0, Fr(0))] + [(m + 1, v) for m, v in enumerate(vals)]
    while pts[-1][1] is INF:
        pts.pop()
    hull = newton_polygon(pts)
    for m, v in pts:
        if v is not INF:
            assert hull.value_at(m) <= v
    for x, y in hull.vertices:
        assert (x, y) in [(Fr(m), v) for m, v in pts]
    s = [s for s, _ in hull.segments()]
    assert s == sorted(set(s))


@settings(max_examples=200, deadline=None)
@given(slope_lists, slope_lists)
def test_compare_consistent(s1, s2):
    if len(s1) != len(s2):
        return
    a, b = Polygon.from_slopes(s1), Polygon.from_slopes(s2)
    r, back = compare(a, b), compare(b, a)
    if r == EQUAL:
        assert back == EQUAL and a == b
    if r == NP_ABOVE:
        assert back == VIOLATION
