"""The st-connectivity span program on G_d and its witnesses.

``H`` has one coordinate per directed edge: column ``2*id`` is the stored
orientation ``(u, v)`` of edge ``id`` and column ``2*id + 1`` is ``(v, u)``.
The column for ``(a, b)`` is ``chi_a - chi_b``, the target is
``chi_s - chi_t`` and input bit ``x_e = 1`` makes both orientations of ``e``
available.

Witness sizes are found by (lexicographic) constrained least squares on dense
matrices; the graphs are small enough that SVD-based null spaces are cheap.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DepthError, ValidationError
from .graph import LabeledGraph, build_dual, build_primal, dual_subgraph
from .resistance import FlowAssignment
from .tree import NandInstance

RANK_RTOL = 1e-9
FEASIBILITY_TOL = 1e-8


@dataclass(frozen=True)
class SpanProgramInstance:
    d: int
    graph: LabeledGraph
    A: np.ndarray = field(repr=False)
    tau: np.ndarray = field(repr=False)
    columns: tuple[tuple[int, int, int], ...] = field(repr=False)  # (edge id, tail, head)

    def available(self, x: NandInstance) -> np.ndarray:
        """Boolean mask over the columns of ``A`` spanning ``H(x)``."""
        if x.depth != 2 * self.d:
            raise DepthError(f"instance depth {x.depth} does not match d={self.d}")
        return np.array([bool(x.bits[eid]) for eid, _, _ in self.columns])


def build_span(d: int) -> SpanProgramInstance:
    g = build_primal(d)
    nv = len(g.vertices)
    columns = []
    for e in g.edges:
        columns.append((e.id, e.u, e.v))
        columns.append((e.id, e.v, e.u))
    a = np.zeros((nv, len(columns)))
    for j, (_, tail, head) in enumerate(columns):
        a[tail, j] += 1.0
        a[head, j] -= 1.0
    tau = np.zeros(nv)
    tau[g.s] = 1.0
    tau[g.t] = -1.0
    return SpanProgramInstance(d, g, a, tau, tuple(columns))


# -- linear algebra ------------------------------------------------------------


def _scale(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def _nullspace(m: np.ndarray, scale: float | None = None) -> np.ndarray:
    """Orthonormal basis (as columns) of the null space of ``m``.

    Singular values below ``RANK_RTOL * scale`` count as zero; pass the norm
    of the unreduced matrix as ``scale`` so round-off in a projected matrix
    is not mistaken for rank.
    """
    if m.size == 0:
        return np.eye(m.shape[1])
    _, sv, vt = np.linalg.svd(m)
    tol = RANK_RTOL * (_scale(m) if scale is None else scale)
    rank = int(np.sum(sv > tol))
    return vt[rank:].T.copy()


def _lstsq(m: np.ndarray, b: np.ndarray, scale: float | None = None) -> np.ndarray:
    if m.shape[1] == 0 or m.shape[0] == 0:
        return np.zeros(m.shape[1])
    u, sv, vt = np.linalg.svd(m, full_matrices=False)
    tol = RANK_RTOL * (_scale(m) if scale is None else scale)
    keep = sv > tol
    return vt[keep].T @ ((u[:, keep].T @ b) / sv[keep])


def lexicographic_lstsq(
    stages: Sequence[tuple[np.ndarray, np.ndarray]],
    constraint: tuple[np.ndarray, np.ndarray] | None = None,
    n: int | None = None,
) -> tuple[np.ndarray | None, list[float]]:
    """Minimize ``|M_1 y - b_1|^2``, then ``|M_2 y - b_2|^2`` over its minimizers, ...

    ``constraint = (C, e)`` restricts ``y`` to ``C y = e``. Returns
    ``(None, [])`` when the constraint is infeasible (residual above
    :data:`FEASIBILITY_TOL`); otherwise the final point and the optimal value
    of every stage.
    """
    if n is None:
        n = stages[0][0].shape[1] if stages else constraint[0].shape[1]
    if constraint is not None:
        c, e = constraint
        y = _lstsq(c, e)
        if np.linalg.norm(c @ y - e) > FEASIBILITY_TOL:
            return None, []
        basis = _nullspace(c)
    else:
        y = np.zeros(n)
        basis = np.eye(n)
    values = []
    for m, b in stages:
        scale = _scale(m)
        reduced = m @ basis
        z = _lstsq(reduced, b - m @ y, scale)
        y = y + basis @ z
        values.append(float(np.sum((m @ y - b) ** 2)))
        if basis.shape[1]:
            basis = basis @ _nullspace(reduced, scale)
    return y, values


# -- witnesses -----------------------------------------------------------------


def positive_witness(p: SpanProgramInstance, x: NandInstance) -> tuple[float, np.ndarray | None]:
    """``(w_+, |w>)``: the minimum-norm ``|w>`` in ``H(x)`` with ``A|w> = tau``."""
    mask = p.available(x)
    sub = p.A[:, mask]
    w_sub = _lstsq(sub, p.tau) if sub.shape[1] else np.zeros(0)
    if np.linalg.norm(sub @ w_sub - p.tau) > FEASIBILITY_TOL:
        return math.inf, None
    w = np.zeros(p.A.shape[1])
    w[mask] = w_sub
    return float(w @ w), w


def negative_witness(p: SpanProgramInstance, x: NandInstance) -> tuple[float, np.ndarray | None]:
    """``(w_-, omega)``: minimize ``|omega A|^2`` s.t. ``omega A Pi_H(x) = 0``, ``omega tau = 1``."""
    mask = p.available(x)
    cons = np.vstack([p.A[:, mask].T, p.tau[None, :]])
    rhs = np.zeros(cons.shape[0])
    rhs[-1] = 1.0
    omega, values = lexicographic_lstsq([(p.A.T, np.zeros(p.A.shape[1]))], (cons, rhs))
    if omega is None:
        return math.inf, None
    return values[0], omega


@dataclass(frozen=True)
class WitnessReport:
    w_plus: float
    w_minus: float
    e_plus: float
    e_minus: float
    wt_plus: float
    wt_minus: float
    witness_vector: np.ndarray = field(repr=False)
    witness_functional: np.ndarray = field(repr=False)

    def to_json(self, p: SpanProgramInstance | None = None) -> dict:
        def num(v: float) -> float | str:
            return "inf" if math.isinf(v) else v

        out: dict = {
            "w_plus": num(self.w_plus),
            "w_minus": num(self.w_minus),
            "e_plus": self.e_plus,
            "e_minus": self.e_minus,
            "wt_plus": self.wt_plus,
            "wt_minus": self.wt_minus,
        }
        if p is not None:
            out["witness_vector"] = {
                f"({a},{b})": float(v)
                for (_, a, b), v in zip(p.columns, self.witness_vector)
            }
            out["witness_functional"] = {
                str(v): float(w) for v, w in zip(p.graph.vertices, self.witness_functional)
            }
        return out


def approx_witnesses(p: SpanProgramInstance, x: NandInstance) -> WitnessReport:
    """Exact and approximate witness sizes for ``x``.

    The approximate positive witness minimizes the weight outside ``H(x)``
    among all ``|w>`` with ``A|w> = tau`` and then the total norm; the
    approximate negative witness minimizes ``|omega A Pi_H(x)|^2`` under
    ``omega tau = 1`` and then ``|omega A|^2``.
    """
    mask = p.available(x)
    nh = p.A.shape[1]
    nv = p.A.shape[0]
    outside = np.eye(nh)[~mask]
    w, (e_plus, wt_plus) = lexicographic_lstsq(
        [(outside, np.zeros(outside.shape[0])), (np.eye(nh), np.zeros(nh))],
        (p.A, p.tau),
    )
    omega, (e_minus, wt_minus) = lexicographic_lstsq(
        [(p.A[:, mask].T, np.zeros(int(mask.sum()))), (p.A.T, np.zeros(nh))],
        (p.tau[None, :], np.ones(1)),
        n=nv,
    )
    w_plus, _ = positive_witness(p, x)
    w_minus, _ = negative_witness(p, x)
    return WitnessReport(
        w_plus=w_plus,
        w_minus=w_minus,
        e_plus=max(e_plus, 0.0),
        e_minus=max(e_minus, 0.0),
        wt_plus=wt_plus,
        wt_minus=wt_minus,
        witness_vector=w,
        witness_functional=omega,
    )


# -- flow <-> witness ----------------------------------------------------------


def flow_to_witness(theta: FlowAssignment, p: SpanProgramInstance, tol: float = 1e-8) -> np.ndarray:
    """Positive witness from a unit s-t flow on a subgraph of ``G_d``.

    Each edge's flow is split evenly over its two orientations, so
    ``|w|^2 = J(theta) / 2``.
    """
    theta.check_unit(tol)
    if theta.graph.kind != "primal" or theta.graph.d != p.d:
        raise ValidationError("flow must live on a subgraph of the program's G_d")
    w = np.zeros(p.A.shape[1])
    for j, (eid, tail, head) in enumerate(p.columns):
        if eid in theta.theta:
            w[j] = theta.along(eid, tail, head) / 2.0
    return w


def witness_to_primal_flow(
    w: np.ndarray, p: SpanProgramInstance, x: NandInstance, tol: float = 1e-8
) -> FlowAssignment:
    """Inverse of :func:`flow_to_witness` on ``G_d(x)``."""
    mask = p.available(x)
    if np.any(np.abs(w[~mask]) > tol) or np.linalg.norm(p.A @ w - p.tau) > tol:
        raise ValidationError("not a positive witness for this input")
    g = p.graph.restrict(e.id for e in p.graph.edges if x.bits[e.id])
    theta = {eid: float(w[2 * eid] - w[2 * eid + 1]) for eid in (e.id for e in g.edges)}
    return FlowAssignment(g, theta)


def witness_to_flow(
    omega: np.ndarray, p: SpanProgramInstance, x: NandInstance, tol: float = 1e-8
) -> FlowAssignment:
    """Unit s'-t' flow on ``G'_d(x)`` from a negative witness ``omega``.

    The flow on a dual edge is the potential drop of ``omega`` across its
    primal partner, read in the partner's stored orientation; then
    ``|omega A|^2 = 2 J(theta)``.
    """
    mask = p.available(x)
    if np.linalg.norm(p.A[:, mask].T @ omega) > tol or abs(p.tau @ omega - 1.0) > tol:
        raise ValidationError("not a negative witness for this input")
    dual, corr = build_dual(p.d)
    dual_x = dual_subgraph(p.d, x, dual)
    dagger = corr.dagger()
    primal = p.graph.edge_map()
    theta = {}
    for e in dual_x.edges:
        (pid,) = [k for k, v in dagger.items() if v == e.id] if e.id not in dagger else [e.id]
        pe = primal[pid]
        theta[e.id] = corr.sign * float(omega[pe.u] - omega[pe.v])
    return FlowAssignment(dual_x, theta)


def flow_to_negative_witness(
    theta: FlowAssignment, p: SpanProgramInstance, tol: float = 1e-8
) -> np.ndarray:
    """Negative witness from a unit s'-t' flow on a subgraph of ``G'_d``.

    Closing the flow with the extra dual edge gives a circulation; by planar
    duality its values on dual edges are the potential drops of a function on
    the primal vertices, recovered by integrating over a spanning tree of the
    closed primal graph.
    """
    theta.check_unit(tol)
    if theta.graph.kind != "dual" or theta.graph.d != p.d:
        raise ValidationError("flow must live on a subgraph of the program's G'_d")
    closed = build_primal(p.d, closed=True)
    sign = build_dual(p.d)[1].sign
    drop = {}
    for e in closed.edges:
        if e.id < 0:
            # the extra edge is stored t -> s; its dual carries the unit return flow
            drop[e.id] = -1.0
        else:
            drop[e.id] = sign * theta.theta.get(e.id, 0.0)
    omega = np.full(len(closed.vertices), np.nan)
    omega[closed.s] = 1.0
    adj = closed.adjacency()
    edges = closed.edge_map()
    queue = deque([closed.s])
    while queue:
        u = queue.popleft()
        for eid, w in adj[u]:
            e = edges[eid]
            # drop = omega(e.u) - omega(e.v)
            val = omega[u] - drop[eid] if u == e.u else omega[u] + drop[eid]
            if np.isnan(omega[w]):
                omega[w] = val
                queue.append(w)
            elif abs(omega[w] - val) > tol:
                raise ValidationError("flow is not a dual circulation: potential is inconsistent")
    return omega
