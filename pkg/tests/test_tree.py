import pytest
from hypothesis import given

from nandlab.errors import AddressError, DepthError, ParseError
from nandlab.tree import (
    NandInstance,
    Player,
    evaluate,
    internal_nodes,
    is_fault,
    mover,
    require_even,
    subtree,
    winner,
)

from conftest import inst, instances


@pytest.mark.parametrize("text,value", [("2:1100", 1), ("2:1010", 0), ("0:1", 1), ("0:0", 0), ("2:0011", 1)])
def test_evaluate(text, value):
    assert evaluate(inst(text)) == value


def test_subtree_blocks():
    x = inst("2:1100")
    assert subtree(x, "0").bits == (1, 1)
    assert subtree(x, "") == x
    assert subtree(x, "11").bits == (0,)
    with pytest.raises(AddressError):
        subtree(x, "101")
    with pytest.raises(AddressError):
        subtree(x, "2")


def test_mover():
    assert mover(inst("2:0000"), "") is Player.A
    assert mover(inst("2:0000"), "1") is Player.B
    assert mover(NandInstance(4, (0,) * 16), "01") is Player.A
    with pytest.raises(AddressError):
        mover(inst("2:0000"), "00")


def test_is_fault():
    assert is_fault(inst("2:1100"), "")
    assert not is_fault(inst("2:1111"), "")
    assert is_fault(inst("2:1010"), "0")


def test_parse_roundtrip_and_errors():
    x = inst("4:1010011100001111")
    assert str(x) == "4:1010011100001111"
    for bad in ["", "2:110", "x:1100", "2:11a0", "2", "2:"]:
        with pytest.raises(ParseError):
            NandInstance.parse(bad)


def test_construction_checks():
    with pytest.raises(DepthError):
        NandInstance(2, (1, 1, 1))
    with pytest.raises(DepthError):
        NandInstance.from_bits([1, 0, 1])
    with pytest.raises(DepthError):
        require_even(inst("1:10"))
    assert require_even(inst("4:" + "0" * 16)) == 2


def test_internal_node_count():
    assert len(list(internal_nodes(4))) == 15


@given(instances())
def test_two_level_unrolling(x):
    if x.depth < 2:
        return
    children = [
        all(evaluate(subtree(x, b + bb)) for bb in "01")
        for b in "01"
    ]
    assert evaluate(x) == int(any(children))


@given(instances(depths=(1, 2, 3, 4, 5)))
def test_local_gate_identity(x):
    for tau in internal_nodes(x.depth):
        here = evaluate(subtree(x, tau))
        kids = [evaluate(subtree(x, tau + b)) for b in "01"]
        if mover(x, tau) is Player.A:
            assert here == (kids[0] | kids[1])
        else:
            assert here == (kids[0] & kids[1])
            if here:
                assert all(kids)


@given(instances())
def test_winner_matches_value(x):
    assert (winner(x) is Player.A) == bool(evaluate(x))
