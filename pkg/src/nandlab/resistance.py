"""Effective resistance of G_d(x) and G'_d(x), exactly and numerically.

Two independent routes:

* ``resistance_exact`` / ``dual_resistance_exact`` never build a graph. They
  recurse on the instance's four quarter-blocks: in ``G_d`` the two blocks of
  each half are in series and the halves are in parallel; in ``G'_d`` the
  roles are swapped.
* ``resistance_numeric`` materializes the graph, solves the Laplacian system
  of the terminal component and reads off the potential drop.

All edges are unit resistors; parallel edges add conductance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import DepthError, NoFlowError, ValidationError
from .extrational import INF, ONE, ExtRational
from .graph import LabeledGraph, component
from .tree import NandInstance

_PIVOT_TOL = 1e-12


def _check_depth(d: int, x: NandInstance) -> None:
    if x.depth != 2 * d:
        raise DepthError(f"instance depth {x.depth} does not match graph level d={d}")


def _series_parallel(bits: Sequence[int], conducting: int, series_inner: bool) -> ExtRational:
    if len(bits) == 1:
        return ONE if bits[0] == conducting else INF
    q = len(bits) // 4
    r = [_series_parallel(bits[i * q : (i + 1) * q], conducting, series_inner) for i in range(4)]
    if series_inner:
        return (r[0] + r[1]) | (r[2] + r[3])
    return (r[0] | r[1]) + (r[2] | r[3])


def resistance_exact(d: int, x: NandInstance) -> ExtRational:
    """``R_{s,t}(G_d(x))`` as an exact rational (or ``INF``)."""
    _check_depth(d, x)
    return _series_parallel(x.bits, 1, True)


def dual_resistance_exact(d: int, x: NandInstance) -> ExtRational:
    """``R_{s',t'}(G'_d(x))`` as an exact rational (or ``INF``)."""
    _check_depth(d, x)
    return _series_parallel(x.bits, 0, False)


# -- numeric route -------------------------------------------------------------


def _potentials(g: LabeledGraph) -> dict[int, float] | None:
    """Potentials for unit current s -> t with phi(t) = 0, or None if disconnected."""
    comp = component(g, g.s)
    if g.t not in comp:
        return None
    if g.s == g.t:
        return {g.s: 0.0}
    free = sorted(v for v in comp if v != g.t)
    index = {v: i for i, v in enumerate(free)}
    lap = np.zeros((len(free), len(free)))
    for e in g.edges:
        if e.u not in comp or e.u == e.v:
            continue
        for a, b in ((e.u, e.v), (e.v, e.u)):
            if a in index:
                lap[index[a], index[a]] += 1.0
                if b in index:
                    lap[index[a], index[b]] -= 1.0
    rhs = np.zeros(len(free))
    rhs[index[g.s]] = 1.0
    factor, lower = scipy.linalg.cho_factor(lap)
    if np.min(np.abs(np.diag(factor))) < _PIVOT_TOL:
        raise np.linalg.LinAlgError("reduced Laplacian is rank deficient")
    phi = scipy.linalg.cho_solve((factor, lower), rhs)
    out = {v: float(phi[index[v]]) for v in free}
    out[g.t] = 0.0
    return out


def resistance_numeric(g: LabeledGraph) -> float:
    """Effective resistance between the terminals; ``math.inf`` if disconnected."""
    phi = _potentials(g)
    if phi is None:
        return math.inf
    return phi[g.s] - phi[g.t]


@dataclass(frozen=True)
class FlowAssignment:
    """Edge flow keyed by edge id, in each edge's stored ``(u, v)`` orientation.

    Antisymmetry is structural: the flow along ``(v, u)`` is ``-theta[id]``.
    """

    graph: LabeledGraph
    theta: dict[int, float]

    def along(self, edge_id: int, tail: int, head: int) -> float:
        e = self.graph.edge_map()[edge_id]
        if (tail, head) == (e.u, e.v):
            return self.theta[edge_id]
        if (tail, head) == (e.v, e.u):
            return -self.theta[edge_id]
        raise KeyError(f"edge {edge_id} does not join {tail} and {head}")

    def energy(self) -> float:
        return math.fsum(v * v for v in self.theta.values())

    def net_outflow(self) -> dict[int, float]:
        out = {v: [] for v in self.graph.vertices}
        for e in self.graph.edges:
            f = self.theta.get(e.id, 0.0)
            out[e.u].append(f)
            out[e.v].append(-f)
        return {v: math.fsum(fs) for v, fs in out.items()}

    def check_unit(self, tol: float = 1e-9) -> None:
        """Raise :class:`ValidationError` unless this is a unit s -> t flow."""
        ids = {e.id for e in self.graph.edges}
        if set(self.theta) - ids:
            raise ValidationError("flow has values on edges not in the graph")
        net = self.net_outflow()
        g = self.graph
        for v, val in net.items():
            want = 1.0 if v == g.s else -1.0 if v == g.t else 0.0
            if abs(val - want) > tol:
                raise ValidationError(
                    f"vertex {v} has net outflow {val}, expected {want}"
                )

    def to_json(self) -> dict[str, float]:
        return {str(k): v for k, v in sorted(self.theta.items())}


def min_energy_flow(g: LabeledGraph) -> FlowAssignment:
    """The unique energy-minimizing unit s-t flow (electrical current)."""
    phi = _potentials(g)
    if phi is None:
        raise NoFlowError("terminals are not connected")
    theta = {}
    for e in g.edges:
        if e.u in phi:
            theta[e.id] = phi[e.u] - phi[e.v]
        else:
            theta[e.id] = 0.0
    return FlowAssignment(g, theta)
