import pytest
from hypothesis import given
from hypothesis import strategies as st

from robusttl.truth import (
    ALL_VALUES,
    BOTTOM,
    POSITIVE_VALUES,
    TOP,
    V0001,
    V0011,
    V0111,
    NonMonotoneBitsError,
    TruthValue4,
    for_bit,
    from_bits,
    from_string,
    imply,
    join,
    meet,
    negate,
)

values = st.sampled_from(ALL_VALUES)


def test_chain_order():
    assert BOTTOM < V0001 < V0011 < V0111 < TOP
    assert list(ALL_VALUES) == sorted(ALL_VALUES)


@pytest.mark.parametrize("bits", [0b0010, 0b0100, 0b1000, 0b1010, 0b0101, 0b1101])
def test_non_monotone_rejected(bits):
    with pytest.raises(NonMonotoneBitsError):
        TruthValue4(bits)


def test_bit_access():
    assert [V0111.bit(i) for i in (1, 2, 3, 4)] == [0, 1, 1, 1]
    assert [TOP.bit(i) for i in (1, 2, 3, 4)] == [1, 1, 1, 1]
    assert [BOTTOM.bit(i) for i in (1, 2, 3, 4)] == [0, 0, 0, 0]
    with pytest.raises(ValueError):
        TOP.bit(0)
    with pytest.raises(ValueError):
        TOP.bit(5)


def test_bit_index():
    assert [v.bit_index for v in POSITIVE_VALUES] == [4, 3, 2, 1]
    with pytest.raises(ValueError):
        _ = BOTTOM.bit_index


def test_for_bit_round_trip():
    for i in range(1, 5):
        assert for_bit(i).bit_index == i
        assert for_bit(i).bit(i) == 1


def test_from_bits_and_string():
    assert from_bits(0, 1, 1, 1) == V0111
    assert from_string("0011") == V0011
    assert str(V0001) == "0001"
    with pytest.raises(NonMonotoneBitsError):
        from_bits(1, 0, 1, 1)
    with pytest.raises(NonMonotoneBitsError):
        from_string("21a1")
    with pytest.raises(NonMonotoneBitsError):
        from_string("011")


@given(values, values)
def test_meet_join_are_lattice_ops(a, b):
    assert meet(a, b) == min(a, b)
    assert join(a, b) == max(a, b)


@given(values)
def test_negate_collapses(a):
    assert negate(a) == (BOTTOM if a == TOP else TOP)
    assert negate(negate(a)) in (TOP, BOTTOM)


@given(values, values)
def test_imply_residuated(a, b):
    out = imply(a, b)
    assert out == (TOP if a <= b else b)
    # Residuation: meet(a, x) <= b iff x <= imply(a, b).
    for x in ALL_VALUES:
        assert (meet(a, x) <= b) == (x <= out)


@given(values, values)
def test_bits_stay_monotone(a, b):
    for v in (meet(a, b), join(a, b), imply(a, b), negate(a)):
        bits = [v.bit(i) for i in (1, 2, 3, 4)]
        assert bits == sorted(bits)
