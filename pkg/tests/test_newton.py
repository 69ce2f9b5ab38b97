from fractions import Fraction

import pytest

from stratlab.errors import MalformedInput, NonCoprime
from stratlab.newton import (
    NewtonPolygon,
    enumerate_symmetric_np,
    np_break_points,
    np_first_slope,
    np_p_rank,
    np_sum,
    parse_np,
    supersingular,
)
from tests.oracles import symmetric_np_multisets


def test_parse_and_canonical_form():
    xi = parse_np("[2,1]+2[1,1]+[1,2]")
    assert xi.expanded() == [(2, 1), (1, 1), (1, 1), (1, 2)]
    assert (xi.height, xi.dimension) == (10, 5)
    assert parse_np("5[1,1]") == supersingular(5)
    assert parse_np("2[1,1]") == parse_np("[1,1]+[1,1]")
    assert parse_np("[1,2] + [2,1]").format() == "[2,1] + [1,2]"


def test_parse_errors():
    with pytest.raises(NonCoprime):
        parse_np("[2,2]")
    for bad in ["", "[1,1", "x[1,1]", "[1,1]+", "0[1,1]"]:
        with pytest.raises(MalformedInput):
            parse_np(bad)


def test_p_rank_and_first_slope():
    assert np_p_rank(supersingular(5)) == 0
    assert np_p_rank("[1,0]+4[1,1]+[0,1]") == 1
    assert np_p_rank("2[1,0]+[2,1]+[1,2]+2[0,1]") == 2
    assert np_first_slope("[4,1]+[1,4]") == Fraction(1, 5)
    assert np_first_slope(supersingular(3)) == Fraction(1, 2)
    assert np_first_slope("[3,2]+[2,3]") == Fraction(2, 5)


def test_break_points():
    assert np_break_points("[1,0]+[0,1]") == [(0, 0), (1, 0), (2, 1)]
    assert np_break_points(supersingular(1)) == [(0, 0), (2, 1)]
    assert np_break_points("[3,2]+[2,3]") == [(0, 0), (5, 2), (10, 5)]


def test_enumeration_g5():
    p0 = {x.format() for x in enumerate_symmetric_np(5, 0)}
    assert p0 == {"5[1,1]", "[4,1] + [1,4]", "[3,1] + [1,1] + [1,3]", "[2,1] + 2[1,1] + [1,2]", "[3,2] + [2,3]"}
    p1 = set(enumerate_symmetric_np(5, 1))
    assert p1 == {
        parse_np("[1,0]+4[1,1]+[0,1]"),
        parse_np("[1,0]+[3,1]+[1,3]+[0,1]"),
        parse_np("[1,0]+[2,1]+[1,1]+[1,2]+[0,1]"),
    }
    assert len(enumerate_symmetric_np(5)) == 13


def test_enumeration_matches_brute_force():
    for g in range(1, 7):
        mine = {tuple(sorted(x.expanded())) for x in enumerate_symmetric_np(g)}
        assert mine == symmetric_np_multisets(g)
        assert len(enumerate_symmetric_np(g)) == len(mine)


def test_enumeration_order():
    for g in range(1, 7):
        keys = [(np_p_rank(x), np_first_slope(x)) for x in enumerate_symmetric_np(g)]
        assert keys == sorted(keys)


def test_np_sum_examples():
    assert np_sum(supersingular(1), "[3,1]+[1,3]") == parse_np("[3,1]+[1,1]+[1,3]")
    assert np_sum("[1,0]+[0,1]", supersingular(3)) == parse_np("[1,0]+3[1,1]+[0,1]")


def test_polygon_invariants():
    for g in range(1, 7):
        polys = enumerate_symmetric_np(g)
        for a in polys:
            assert a.is_symmetric
            assert a.height == 2 * a.dimension == 2 * g
            assert np_break_points(a)[-1] == (2 * g, g)
            assert np_p_rank(a) == sum(1 for s in a.slopes() if s == 0)
            for b in polys[:4]:
                s = np_sum(a, b)
                assert s == np_sum(b, a)
                assert s.is_symmetric
                assert s.dimension == a.dimension + b.dimension
                assert s.height == a.height + b.height
                assert np_p_rank(s) == np_p_rank(a) + np_p_rank(b)


def test_json_rendering():
    j = parse_np("[3,2]+[2,3]").to_json()
    assert j["first_slope"] == "2/5"
    assert j["segments"] == [[3, 2], [2, 3]]
    assert j["break_points"] == [[0, 0], [5, 2], [10, 5]]
    assert isinstance(NewtonPolygon.from_pairs([(1, 1)]), NewtonPolygon)
