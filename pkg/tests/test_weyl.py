from itertools import product
from pathlib import Path

import pytest

from stratlab.eo_seq import ElementarySeq, a_number, eo_dimension, enumerate_elementary, p_rank
from stratlab.errors import DimensionMismatch, InvariantViolation, LengthCap
from stratlab.weyl import (
    SymplecticPerm,
    bc_below,
    bruhat_leq,
    closure_below,
    closure_poset,
    closure_witness,
    enumerate_W,
    enumerate_WI,
    poset_to_dot,
    semicontinuity_violations,
    w0I,
    weyl_element,
)
from tests.oracles import brute_W

GOLDEN = Path(__file__).parent / "golden"
E = ElementarySeq.of
P = lambda *xs: SymplecticPerm(xs)


def _seq(s):
    return ElementarySeq(tuple(int(c) for c in s))


def figure_edges():
    out = set()
    for line in (GOLDEN / "figure1_edges.txt").read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            a, b = line.split()
            out.add((_seq(a), _seq(b)))
    return out


def test_weyl_element_examples():
    assert weyl_element("0") == P(1, 2)
    assert weyl_element("1") == P(2, 1)
    assert weyl_element("0,1") == P(1, 3, 2, 4)
    for g in range(1, 8):
        for phi in enumerate_elementary(g):
            weyl_element(phi)  # constructor enforces the symmetry


def test_membership_check():
    with pytest.raises(InvariantViolation):
        P(1, 2, 4, 3)
    with pytest.raises(InvariantViolation):
        P(1, 1)


def test_group_sizes():
    assert len(enumerate_W(5)) == 3840
    assert len(enumerate_WI(5)) == 120
    assert enumerate_WI(1) == [P(1, 2)]
    for g in range(1, 4):
        assert sorted(w.images for w in enumerate_W(g)) == sorted(brute_W(g))
    with pytest.raises(LengthCap):
        enumerate_W(8)
    with pytest.raises(LengthCap):
        enumerate_WI(11)


def test_w0I():
    assert w0I(2) == P(2, 1, 4, 3)
    for g in range(1, 6):
        w = w0I(g)
        assert w * w == SymplecticPerm(tuple(range(1, 2 * g + 1)))
        assert set(w.images[:g]) == set(range(1, g + 1))


def test_product_convention():
    x, y = P(2, 1, 4, 3), P(1, 3, 2, 4)
    assert (x * y)(2) == x(y(2)) == 4
    assert (x * x.inverse()) == P(1, 2, 3, 4)


def test_bc_below_examples():
    assert not bc_below(P(1, 3, 2, 4), P(1, 2, 3, 4))
    for w in enumerate_W(2):
        assert bc_below(P(1, 2, 3, 4), w)
        assert bc_below(w, w)
    with pytest.raises(DimensionMismatch):
        bc_below(P(1, 2), P(1, 2, 3, 4))


def test_bc_below_preorder_exhaustive():
    for g in range(1, 4):
        ws = enumerate_W(g)
        for a in ws:
            assert bc_below(a, a)
        for a, b in product(ws, repeat=2):
            if not bc_below(a, b):
                continue
            for c in ws:
                if bc_below(b, c):
                    assert bc_below(a, c)


def test_bruhat_is_partial_order_g3():
    ws = enumerate_W(3)
    for a, b in product(ws, repeat=2):
        if a != b and bruhat_leq(a, b):
            assert not bruhat_leq(b, a)


def test_closure_examples():
    assert closure_below("0,0", "0,1")
    assert not closure_below("0,1", "0,0")
    assert not closure_below("0,0,0,1,2", "0,0,1,1,1")
    assert not closure_below("0,0,1,1,1", "0,0,0,1,2")
    for phi in enumerate_elementary(4):
        assert closure_below(phi, phi)
    w = closure_witness("0,0", "0,1")
    assert w is not None
    with pytest.raises(DimensionMismatch):
        closure_below("0", "0,1")
    with pytest.raises(LengthCap):
        closure_poset(8)


def test_closure_antisymmetric_and_monotone():
    for g in range(1, 6):
        poset = closure_poset(g)
        rel = poset.relation
        n = len(poset.nodes)
        for i in range(n):
            for j in range(n):
                if i != j and rel[i, j]:
                    assert not rel[j, i]
                    assert eo_dimension(poset.nodes[i]) < eo_dimension(poset.nodes[j])


def test_closure_semicontinuity():
    # p-rank can only drop and a-number only grow when specialising
    for g in range(1, 6):
        poset = closure_poset(g)
        for i, j in zip(*poset.relation.nonzero()):
            a, b = poset.nodes[i], poset.nodes[j]
            assert p_rank(a) <= p_rank(b) and a_number(a) >= a_number(b)


def test_small_chains():
    p = closure_poset(2)
    assert p.hasse_edges == ((E(0, 0), E(0, 1)), (E(0, 1), E(1, 1)), (E(1, 1), E(1, 2)))
    p = closure_poset(1)
    assert p.hasse_edges == ((E(0), E(1)),)


def test_g5_prank0_structure():
    poset = closure_poset(5, 0)
    assert len(poset.nodes) == 16
    assert len(poset.hasse_edges) == 22
    for a, b in poset.hasse_edges:
        assert eo_dimension(b) - eo_dimension(a) == 1
    edges = set(poset.hasse_edges)
    assert (E(0, 0, 0, 1, 1), E(0, 0, 0, 1, 2)) in edges
    assert (E(0, 1, 2, 3, 3), E(0, 1, 2, 3, 4)) in edges
    assert (E(0, 0, 0, 1, 2), E(0, 0, 1, 1, 1)) not in edges


def test_g5_prank0_matches_figure():
    assert set(closure_poset(5, 0).hasse_edges) == figure_edges()


def test_g5_prank0_computed_difference():
    # pin where the computed diagram and the transcribed one differ
    computed = set(closure_poset(5, 0).hasse_edges)
    fig = figure_edges()
    assert computed - fig == {
        (_seq("01111"), _seq("00122")),
        (_seq("01112"), _seq("00123")),
    }
    assert fig - computed == {
        (_seq("00012"), _seq("01111")),
        (_seq("00123"), _seq("01222")),
    }
    # the two transcribed edges that are missing here both decrease the a-number upwards
    assert set(semicontinuity_violations(fig)) == fig - computed
    assert semicontinuity_violations(computed) == []


def test_other_conventions():
    assert len(closure_poset(5, 0, "literal").hasse_edges) == 15
    # reading the composite left to right gives the same relation
    for g in range(1, 6):
        assert (closure_poset(g, convention="opposite").relation == closure_poset(g).relation).all()
    with pytest.raises(Exception):
        closure_poset(3, convention="sideways")


def test_dot_output_stable():
    a = poset_to_dot(closure_poset(5, 0))
    b = poset_to_dot(closure_poset(5, 0))
    assert a == b
    assert a.startswith('digraph "closure_g5" {\n')
    assert '  "00011" -> "00012";' in a
    assert a.count("->") == 22
    assert "// dim 0" in a and "// dim 10" in a
