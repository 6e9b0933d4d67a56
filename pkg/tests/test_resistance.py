import math
import random

import numpy as np
import pytest
from hypothesis import given, settings

from nandlab.errors import DepthError, NoFlowError, ValidationError
from nandlab.extrational import INF, ExtRational
from nandlab.graph import Edge, LabeledGraph, build_primal, dual_subgraph, primal_subgraph
from nandlab.resistance import (
    FlowAssignment,
    dual_resistance_exact,
    min_energy_flow,
    resistance_exact,
    resistance_numeric,
)
from nandlab.tree import NandInstance

from conftest import inst, instances


def test_exact_examples():
    assert resistance_exact(0, inst("0:1")) == 1
    assert resistance_exact(1, inst("2:1100")) == 2
    assert resistance_exact(1, inst("2:1111")) == 1
    assert dual_resistance_exact(1, inst("2:0000")) == 1
    assert dual_resistance_exact(1, inst("2:0100")) == ExtRational("3/2")
    assert dual_resistance_exact(1, inst("2:1111")) == INF
    with pytest.raises(DepthError):
        resistance_exact(2, inst("2:1111"))


def test_numeric_examples():
    assert resistance_numeric(primal_subgraph(1, inst("2:1111"))) == pytest.approx(1.0, abs=1e-9)
    double = LabeledGraph(0, "dual", (0, 1), (Edge(0, 0, 1, "a"), Edge(1, 0, 1, "b")), 0, 1)
    assert resistance_numeric(double) == pytest.approx(0.5, abs=1e-9)
    empty = LabeledGraph(0, "primal", (0, 1), (), 0, 1)
    assert math.isinf(resistance_numeric(empty))


def test_flow_examples():
    th = min_energy_flow(primal_subgraph(1, inst("2:1111")))
    assert all(abs(abs(v) - 0.5) < 1e-12 for v in th.theta.values())
    assert th.energy() == pytest.approx(1.0)
    th = min_energy_flow(primal_subgraph(1, inst("2:1100")))
    assert sorted(abs(v) for v in th.theta.values()) == pytest.approx([1.0, 1.0])
    th = min_energy_flow(primal_subgraph(0, inst("0:1")))
    assert th.theta == {0: pytest.approx(1.0)}
    with pytest.raises(NoFlowError):
        min_energy_flow(primal_subgraph(1, inst("2:0000")))


def test_bad_flow_rejected():
    g = primal_subgraph(1, inst("2:1100"))
    with pytest.raises(ValidationError):
        FlowAssignment(g, {0: 1.0, 1: 0.5}).check_unit()


@settings(max_examples=150)
@given(instances(depths=(0, 2, 4, 6)))
def test_exact_matches_numeric(x):
    d = x.depth // 2
    for exact, g in (
        (resistance_exact(d, x), primal_subgraph(d, x)),
        (dual_resistance_exact(d, x), dual_subgraph(d, x)),
    ):
        num = resistance_numeric(g)
        if exact.is_inf:
            assert math.isinf(num)
        else:
            assert num == pytest.approx(float(exact), rel=1e-6)


@settings(max_examples=100)
@given(instances(depths=(2, 4, 6)))
def test_flow_validity_and_range(x):
    d = x.depth // 2
    g = primal_subgraph(d, x)
    r = resistance_exact(d, x)
    if r.is_inf:
        return
    th = min_energy_flow(g)
    th.check_unit(1e-9)
    assert th.energy() == pytest.approx(float(r), rel=1e-9)
    assert 1 <= r <= 2**d


def test_rayleigh_monotonicity():
    rng = random.Random(5)
    base = build_primal(2)
    for _ in range(200):
        bits = [rng.randint(0, 1) for _ in range(16)]
        before = resistance_numeric(primal_subgraph(2, NandInstance(4, tuple(bits)), base))
        bits[rng.randrange(16)] = 1
        after = resistance_numeric(primal_subgraph(2, NandInstance(4, tuple(bits)), base))
        assert after <= before + 1e-12


def test_sampled_oracle_agreement_d3():
    rng = np.random.default_rng(3)
    base = build_primal(3)
    for _ in range(300):
        x = NandInstance(6, tuple(int(b) for b in rng.integers(0, 2, 64)))
        exact = resistance_exact(3, x)
        num = resistance_numeric(primal_subgraph(3, x, base))
        assert (math.isinf(num) and exact.is_inf) or num == pytest.approx(float(exact), rel=1e-6)
