from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nandlab.extrational import INF, ONE, ExtRational

finite = st.fractions(min_value=0, max_value=1000).map(ExtRational)
values = st.one_of(finite, st.just(INF))


def test_basic_ops():
    half = ExtRational(Fraction(1, 2))
    assert ONE + ONE == 2
    assert (ONE | ONE) == half
    assert (INF | ONE) == ONE
    assert INF + ONE == INF
    assert ONE < INF
    assert ExtRational("3/2").to_json() == "3/2"
    assert ExtRational.from_json("inf").is_inf
    assert float(INF) == float("inf")


def test_rejects_undefined():
    with pytest.raises(ValueError):
        ExtRational(-1)
    with pytest.raises(ValueError):
        ExtRational(0) * INF


@given(values, values)
def test_parallel_is_commutative_and_bounded(a, b):
    p = a | b
    assert p == (b | a)
    assert p <= a and p <= b


@given(values)
def test_json_roundtrip(a):
    assert ExtRational.from_json(a.to_json()) == a
