"""Per-instance cross-checks and sweeps over exhaustive or sampled instance sets.

Each check returns True when the instance passes. ``run_sweep`` groups them
into suites and counts failures; the CLI ``verify`` command and the
acceptance tests both drive it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .complexity import (
    MAX_BRUTEFORCE_DEPTH,
    choice_complexity,
    choice_complexity_bruteforce,
)
from .graph import build_dual, build_primal, dual_subgraph, primal_subgraph, st_connected, verify_duality
from .resistance import dual_resistance_exact, resistance_exact, resistance_numeric
from .span import SpanProgramInstance, approx_witnesses, negative_witness, positive_witness
from .tree import NandInstance, Player, all_instances, evaluate

REL_TOL = 1e-6


def _close(numeric: float, exact) -> bool:
    if exact.is_inf:
        return math.isinf(numeric)
    want = float(exact)
    return math.isfinite(numeric) and abs(numeric - want) <= REL_TOL * max(want, 1e-300)


class _Graphs:
    """Base graphs per level, built once per sweep."""

    def __init__(self) -> None:
        self._primal: dict[int, object] = {}
        self._dual: dict[int, object] = {}
        self._span: dict[int, SpanProgramInstance] = {}

    def primal(self, d: int):
        if d not in self._primal:
            self._primal[d] = build_primal(d)
        return self._primal[d]

    def dual(self, d: int):
        if d not in self._dual:
            self._dual[d] = build_dual(d)[0]
        return self._dual[d]

    def span(self, d: int) -> SpanProgramInstance:
        if d not in self._span:
            from .span import build_span

            self._span[d] = build_span(d)
        return self._span[d]


def check_connectivity(x: NandInstance, graphs: _Graphs) -> bool:
    d = x.depth // 2
    value = evaluate(x)
    primal = st_connected(primal_subgraph(d, x, graphs.primal(d)))
    dual = st_connected(dual_subgraph(d, x, graphs.dual(d)))
    return primal == bool(value) and dual == (not value)


def check_identity(x: NandInstance, graphs: _Graphs) -> bool:
    d = x.depth // 2
    rep = choice_complexity(x)
    return rep.c_A == resistance_exact(d, x) and rep.c_B == dual_resistance_exact(d, x)


def check_numeric(x: NandInstance, graphs: _Graphs) -> bool:
    d = x.depth // 2
    rep = choice_complexity(x)
    r = resistance_numeric(primal_subgraph(d, x, graphs.primal(d)))
    r_dual = resistance_numeric(dual_subgraph(d, x, graphs.dual(d)))
    return _close(r, rep.c_A) and _close(r_dual, rep.c_B)


def check_bruteforce(x: NandInstance, graphs: _Graphs) -> bool:
    rep = choice_complexity(x)
    return rep.c_A == choice_complexity_bruteforce(x, Player.A) and rep.c_B == choice_complexity_bruteforce(
        x, Player.B
    )


def check_dominance(x: NandInstance, graphs: _Graphs) -> bool:
    rep = choice_complexity(x)
    return rep.c <= rep.f


def check_witness(x: NandInstance, graphs: _Graphs) -> bool:
    d = x.depth // 2
    p = graphs.span(d)
    w_plus, _ = positive_witness(p, x)
    w_minus, _ = negative_witness(p, x)
    r = resistance_exact(d, x)
    r_dual = dual_resistance_exact(d, x)
    return _close(w_plus, r / 2 if r.is_finite else r) and _close(w_minus, r_dual * 2)


def check_approx_bound(x: NandInstance, graphs: _Graphs) -> bool:
    d = x.depth // 2
    rep = approx_witnesses(graphs.span(d), x)
    bound = 2 ** (d + 1) * (1 + REL_TOL)
    return rep.wt_plus <= bound and rep.wt_minus <= bound


Check = Callable[[NandInstance, _Graphs], bool]

SUITES: dict[str, Check] = {
    "connectivity": check_connectivity,
    "identity": check_identity,
    "numeric": check_numeric,
    "bruteforce": check_bruteforce,
    "dominance": check_dominance,
    "witness": check_witness,
    "approx_bound": check_approx_bound,
}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"suite": self.name, "checked": self.checked, "failures": len(self.failures), "examples": self.failures[:5]}


def instances_for(d: int, sample: int, rng: np.random.Generator, exhaustive_max: int = 2) -> Iterator[NandInstance]:
    """All depth-2d instances for ``d <= exhaustive_max``, else ``sample`` uniform draws."""
    if d <= exhaustive_max:
        yield from all_instances(2 * d)
        return
    n = 4**d
    for _ in range(sample):
        yield NandInstance(2 * d, tuple(int(b) for b in rng.integers(0, 2, n)))


def run_suites(
    instances: Iterable[NandInstance],
    suites: Iterable[str],
    graphs: _Graphs | None = None,
) -> dict[str, SuiteResult]:
    graphs = graphs or _Graphs()
    names = list(suites)
    results = {name: SuiteResult(name) for name in names}
    for x in instances:
        for name in names:
            if name == "bruteforce" and x.depth > MAX_BRUTEFORCE_DEPTH:
                continue
            res = results[name]
            res.checked += 1
            if not SUITES[name](x, graphs):
                res.failures.append(str(x))
    return results


def run_sweep(max_d: int, sample: int, seed: int, suites: Iterable[str] | None = None) -> dict:
    """Every suite on every level ``1..max_d`` plus the duality check for ``0..max_d``."""
    names = list(suites) if suites is not None else list(SUITES)
    rng = np.random.Generator(np.random.Philox(seed))
    graphs = _Graphs()
    per_level = []
    instances = 0
    for d in range(1, max_d + 1):
        xs = list(instances_for(d, sample, rng))
        instances += len(xs)
        res = run_suites(xs, names, graphs)
        per_level.append({"d": d, "instances": len(xs), "suites": [r.to_json() for r in res.values()]})
    duality = {d: verify_duality(d) for d in range(max_d + 1)}
    failures = sum(s["failures"] for lvl in per_level for s in lvl["suites"])
    failures += sum(not ok for ok in duality.values())
    return {
        "max_d": max_d,
        "sample": sample,
        "seed": seed,
        "instances_checked": instances,
        "levels": per_level,
        "duality": {str(d): ok for d, ok in duality.items()},
        "failures": failures,
    }
