import pytest

from stratlab.eo_seq import (
    ElementarySeq,
    FinalSeq,
    a_number,
    enumerate_elementary,
    eo_dimension,
    p_rank,
    parse_elementary,
    stretch,
)
from stratlab.errors import InvariantViolation, LengthCap, MalformedInput
from tests.oracles import all_elementary, psi_of


def test_parse_comma_and_compact():
    assert parse_elementary("0,1,1,2,2").values == (0, 1, 1, 2, 2)
    assert parse_elementary("01234") == ElementarySeq((0, 1, 2, 3, 4))
    assert parse_elementary("(0,1,1)") == ElementarySeq.of(0, 1, 1)


def test_parse_rejects_big_step():
    with pytest.raises(InvariantViolation):
        parse_elementary("0,2")


@pytest.mark.parametrize("bad", ["", "0;1", "a,b", "0,,1", "(0,1"])
def test_parse_malformed(bad):
    with pytest.raises(MalformedInput):
        parse_elementary(bad)


def test_compact_only_up_to_nine():
    with pytest.raises(MalformedInput):
        parse_elementary("0123456789")
    phi = parse_elementary(",".join(str(i) for i in range(10)))
    assert phi.g == 10 and phi.compact() == phi.format()


def test_length_cap():
    with pytest.raises(LengthCap):
        ElementarySeq((0,) * 17)


def test_enumeration_counts_and_order():
    assert len(enumerate_elementary(5)) == 32
    assert len(enumerate_elementary(5, 0)) == 16
    assert enumerate_elementary(1) == [ElementarySeq((0,)), ElementarySeq((1,))]
    for g in range(1, 11):
        seqs = enumerate_elementary(g)
        assert len(seqs) == 2**g
        assert seqs == sorted(seqs)
    assert {p.values for p in enumerate_elementary(6)} == set(all_elementary(6))


def test_p_rank_examples():
    assert p_rank("01234") == 0
    assert p_rank("123") == 3
    assert p_rank("11223") == 1


def test_a_number_examples():
    assert a_number("00000") == 5
    assert a_number("01234") == 1
    assert a_number("123") == 0


def test_dimension_examples():
    assert eo_dimension("00000") == 0
    assert eo_dimension("01234") == 10
    assert eo_dimension("00112") == 4


def test_stretch_examples():
    assert stretch("01234").values == (0, 0, 1, 2, 3, 4, 4, 4, 4, 4, 5)
    assert stretch("0").values == (0, 0, 1)
    assert stretch("1").values == (0, 1, 1)


def test_final_seq_rejects_asymmetry():
    with pytest.raises(InvariantViolation):
        FinalSeq(1, (0, 1, 2))


def test_exhaustive_invariants():
    for g in range(1, 11):
        for phi in enumerate_elementary(g):
            vals = phi.values
            assert p_rank(phi) == max([i for i in range(1, g + 1) if vals[i - 1] == i], default=0)
            assert a_number(phi) == g - vals[-1]
            assert list(stretch(phi).values) == psi_of(vals)
            assert parse_elementary(phi.format()) == phi
            assert parse_elementary(str(phi)) == phi
            assert (p_rank(phi) >= 1) == (vals[0] == 1)
