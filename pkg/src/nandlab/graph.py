"""The graph families G_d and G'_d, their input subgraphs and planar duality.

``G_0`` is a single edge ``s-t``. ``G_d`` replaces every edge ``(u, v)`` of
``G_{d-1}`` labelled ``tau`` by a 4-cycle: the path ``u -tau00- l -tau01- v``
and the path ``u -tau10- r -tau11- v``. Edge labels of ``G_d`` are the
length-``2d`` bit strings and name the leaf variable an edge carries, so the
edge id is simply the leaf index ``int(label, 2)``.

``G'_d`` replaces every edge ``(u', v')`` of ``G'_{d-1}`` by two parallel
pairs through one new vertex ``m``: ``u' =tau10,tau11= m =tau00,tau01= v'``.
Dual edges keep their primal partner's label and id.

Embeddings are combinatorial: ``rotation[v]`` lists the edges at ``v`` in
clockwise order. A replaced edge keeps its slot in the rotation of both
endpoints, with the ``l`` path on the walker's right when going ``u -> v``.
The closed graphs (``bar`` variants) add the extra terminal edge with id
:data:`EXTRA_EDGE`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import DepthError, EmbeddingError
from .tree import NandInstance

EXTRA_EDGE = -1
EXTRA_LABEL = "st"


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    label: str


@dataclass(frozen=True)
class LabeledGraph:
    d: int
    kind: str  # "primal" or "dual"
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    s: int
    t: int
    rotation: dict[int, tuple[int, ...]] | None = field(default=None, compare=False)

    def edge_map(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """``vertex -> [(edge id, neighbour)]``."""
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append((e.id, e.v))
            adj[e.v].append((e.id, e.u))
        return adj

    def restrict(self, keep: Iterable[int]) -> LabeledGraph:
        """Subgraph on all vertices with only the edges whose ids are in ``keep``."""
        keep = set(keep)
        rotation = None
        if self.rotation is not None:
            rotation = {
                v: tuple(e for e in rot if e in keep) for v, rot in self.rotation.items()
            }
        return LabeledGraph(
            self.d,
            self.kind,
            self.vertices,
            tuple(e for e in self.edges if e.id in keep),
            self.s,
            self.t,
            rotation,
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "kind": self.kind,
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "u": e.u, "v": e.v, "label": e.label} for e in self.edges
            ],
            "s": self.s,
            "t": self.t,
        }


@dataclass(frozen=True)
class DualCorrespondence:
    """Edge bijection between the closed primal and closed dual graphs.

    ``sign = +1`` records that each dual edge is stored oriented a quarter
    turn clockwise from its primal partner's stored orientation.
    """

    pairs: tuple[tuple[int, int], ...]
    sign: int = 1

    def dagger(self) -> dict[int, int]:
        return dict(self.pairs)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]


def _label_id(label: str) -> int:
    return int(label, 2) if label else 0


def _build_primal_closed(d: int):
    """Edge table and rotation of the closed graph, keyed by label."""
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    s, t = 0, 1
    # the extra edge is stored t -> s so its dual (s', t') obeys the same
    # quarter-turn orientation rule as every other edge
    ends: dict[str, tuple[int, int]] = {"": (s, t), EXTRA_LABEL: (t, s)}
    rotation: dict[int, list[str]] = {s: ["", EXTRA_LABEL], t: [EXTRA_LABEL, ""]}
    next_vertex = 2
    labels = [""]
    for _ in range(d):
        new_labels = []
        for tau in labels:
            u, v = ends.pop(tau)
            left, right = next_vertex, next_vertex + 1
            next_vertex += 2
            ends[tau + "00"] = (u, left)
            ends[tau + "01"] = (left, v)
            ends[tau + "10"] = (u, right)
            ends[tau + "11"] = (right, v)
            ru = rotation[u]
            i = ru.index(tau)
            ru[i : i + 1] = [tau + "10", tau + "00"]
            rv = rotation[v]
            j = rv.index(tau)
            rv[j : j + 1] = [tau + "01", tau + "11"]
            rotation[left] = [tau + "00", tau + "01"]
            rotation[right] = [tau + "10", tau + "11"]
            new_labels.extend(tau + suffix for suffix in ("00", "01", "10", "11"))
        labels = new_labels
    return ends, rotation, next_vertex, s, t


def _finish(d, kind, ends, rotation, nverts, s, t, closed) -> LabeledGraph:
    def eid(label: str) -> int:
        return EXTRA_EDGE if label == EXTRA_LABEL else _label_id(label)

    edges = [
        Edge(eid(lab), u, v, lab)
        for lab, (u, v) in ends.items()
        if closed or lab != EXTRA_LABEL
    ]
    edges.sort(key=lambda e: (e.id == EXTRA_EDGE, e.id))
    rot = {
        v: tuple(eid(lab) for lab in labs if closed or lab != EXTRA_LABEL)
        for v, labs in rotation.items()
    }
    return LabeledGraph(d, kind, tuple(range(nverts)), tuple(edges), s, t, rot)


def build_primal(d: int, closed: bool = False) -> LabeledGraph:
    """``G_d`` (or ``G_d`` plus the extra ``{s, t}`` edge when ``closed``)."""
    ends, rotation, nverts, s, t = _build_primal_closed(d)
    return _finish(d, "primal", ends, rotation, nverts, s, t, closed)


def _build_dual_closed(d: int):
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    s, t = 0, 1
    ends: dict[str, tuple[int, int]] = {"": (s, t), EXTRA_LABEL: (s, t)}
    next_vertex = 2
    labels = [""]
    for _ in range(d):
        new_labels = []
        for tau in labels:
            u, v = ends.pop(tau)
            m = next_vertex
            next_vertex += 1
            ends[tau + "00"] = (m, v)
            ends[tau + "01"] = (m, v)
            ends[tau + "10"] = (u, m)
            ends[tau + "11"] = (u, m)
            new_labels.extend(tau + suffix for suffix in ("00", "01", "10", "11"))
        labels = new_labels
    return ends, next_vertex, s, t


def build_dual(d: int, closed: bool = False) -> tuple[LabeledGraph, DualCorrespondence]:
    """``G'_d`` and the correspondence with ``G_d``.

    The dual carries no rotation system: it is only ever used as an abstract
    multigraph, and duality is checked from the primal side.
    """
    ends, nverts, s, t = _build_dual_closed(d)
    g = _finish(d, "dual", ends, {}, nverts, s, t, closed)
    g = LabeledGraph(g.d, g.kind, g.vertices, g.edges, g.s, g.t, None)
    pairs = tuple((e.id, e.id) for e in g.edges)
    if not closed:
        pairs = pairs + ((EXTRA_EDGE, EXTRA_EDGE),)
    return g, DualCorrespondence(pairs)


def _check_depth(d: int, x: NandInstance) -> None:
    if x.depth != 2 * d:
        raise DepthError(f"instance depth {x.depth} does not match graph level d={d}")


def primal_subgraph(d: int, x: NandInstance, base: LabeledGraph | None = None) -> LabeledGraph:
    """``G_d(x)``: the edges whose variable is 1."""
    _check_depth(d, x)
    g = base if base is not None else build_primal(d)
    return g.restrict(e.id for e in g.edges if e.id != EXTRA_EDGE and x.bits[e.id])


def dual_subgraph(d: int, x: NandInstance, base: LabeledGraph | None = None) -> LabeledGraph:
    """``G'_d(x)``: the dual edges whose primal variable is 0."""
    _check_depth(d, x)
    g = base if base is not None else build_dual(d)[0]
    return g.restrict(e.id for e in g.edges if e.id != EXTRA_EDGE and not x.bits[e.id])


def st_connected(g: LabeledGraph) -> bool:
    """Breadth-first search from ``s``; true iff ``t`` is reached."""
    return g.t in component(g, g.s)


def component(g: LabeledGraph, root: int) -> set[int]:
    adj = g.adjacency()
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for _, w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


# -- faces ---------------------------------------------------------------------

Dart = tuple[int, int, int]  # (edge id, tail, head)


def faces(g: LabeledGraph) -> list[list[Dart]]:
    """Face boundary walks of the embedded graph ``g``.

    Each face is a cyclic list of darts. After arriving at ``w`` along edge
    ``e`` the walk leaves along the clockwise successor of ``e`` at ``w``.
    Raises :class:`EmbeddingError` when the rotation does not match the edge
    set or the result violates Euler's formula.
    """
    if g.rotation is None:
        raise EmbeddingError("graph has no rotation system")
    edges = g.edge_map()
    incident: dict[int, list[int]] = {v: [] for v in g.vertices}
    for e in g.edges:
        if e.u == e.v:
            raise EmbeddingError(f"self-loop on edge {e.id}")
        incident[e.u].append(e.id)
        incident[e.v].append(e.id)
    for v in g.vertices:
        rot = g.rotation.get(v, ())
        if sorted(rot) != sorted(incident[v]):
            raise EmbeddingError(f"rotation at vertex {v} does not list its edges")

    position = {(v, e): i for v, rot in g.rotation.items() for i, e in enumerate(rot)}

    def succ(dart: Dart) -> Dart:
        _, _, w = dart
        rot = g.rotation[w]
        nxt = rot[(position[(w, dart[0])] + 1) % len(rot)]
        e = edges[nxt]
        return (nxt, w, e.v if e.u == w else e.u)

    unvisited = {(e.id, e.u, e.v) for e in g.edges} | {(e.id, e.v, e.u) for e in g.edges}
    result = []
    # deterministic order: start each face at the smallest remaining dart
    while unvisited:
        start = min(unvisited)
        walk = []
        dart = start
        while True:
            walk.append(dart)
            unvisited.discard(dart)
            dart = succ(dart)
            if dart == start:
                break
            if dart not in unvisited:
                raise EmbeddingError("face walk re-entered a used dart")
        result.append(walk)

    used = {v for e in g.edges for v in (e.u, e.v)}
    if len(component(g, g.s)) != len(g.vertices) or len(used) != len(g.vertices):
        raise EmbeddingError("face tracing needs a connected graph")
    if len(g.vertices) - len(g.edges) + len(result) != 2:
        raise EmbeddingError(
            f"Euler check failed: V={len(g.vertices)} E={len(g.edges)} F={len(result)}"
        )
    return result


def verify_duality(d: int) -> bool:
    """Check that the closed dual is the planar dual of the closed primal.

    Faces of the closed ``G_d`` are traced from its rotation system. The
    check passes iff there is a bijection from faces to dual vertices that
    sends the two faces beside every primal edge ``e`` to the endpoints of
    ``e``'s dual partner, and the dual tail always sits on the same side of
    the primal dart ``u -> v`` (consistent orientation).
    """
    primal = build_primal(d, closed=True)
    dual, corr = build_dual(d, closed=True)
    dagger = corr.dagger()
    dual_edges = dual.edge_map()
    try:
        face_list = faces(primal)
    except EmbeddingError:
        return False
    if len(face_list) != len(dual.vertices):
        return False
    if set(dagger) != {e.id for e in primal.edges}:
        return False

    # face on each side of every primal edge
    side: dict[tuple[int, int], int] = {}  # (edge id, 0 for dart u->v / 1 for v->u)
    edges = primal.edge_map()
    for fi, walk in enumerate(face_list):
        for eid, tail, _ in walk:
            side[(eid, 0 if tail == edges[eid].u else 1)] = fi

    candidates: list[set[int]] = []
    for walk in face_list:
        cand: set[int] | None = None
        for eid, _, _ in walk:
            de = dual_edges[dagger[eid]]
            ends = {de.u, de.v}
            cand = ends if cand is None else cand & ends
        candidates.append(cand or set())

    assignment: dict[int, int] = {}
    order = sorted(range(len(face_list)), key=lambda f: len(candidates[f]))

    def consistent(f: int) -> bool:
        for eid, _, _ in face_list[f]:
            a, b = side[(eid, 0)], side[(eid, 1)]
            if a in assignment and b in assignment:
                de = dual_edges[dagger[eid]]
                if sorted((assignment[a], assignment[b])) != sorted((de.u, de.v)):
                    return False
        return True

    def search(k: int, used: set[int]) -> bool:
        if k == len(order):
            return True
        f = order[k]
        for vert in sorted(candidates[f] - used):
            assignment[f] = vert
            if consistent(f) and search(k + 1, used | {vert}):
                return True
            del assignment[f]
        return False

    if not search(0, set()):
        return False

    # orientation: the dual tail is the face on one fixed side of u -> v
    sides_used = set()
    for e in primal.edges:
        de = dual_edges[dagger[e.id]]
        if assignment[side[(e.id, 0)]] == de.u and assignment[side[(e.id, 1)]] == de.v:
            sides_used.add(0)
        elif assignment[side[(e.id, 1)]] == de.u and assignment[side[(e.id, 0)]] == de.v:
            sides_used.add(1)
        else:
            return False
    return len(sides_used) == 1


def self_avoiding_path_lengths(g: LabeledGraph) -> set[int]:
    """Lengths of all simple ``s``-``t`` paths (exponential; small graphs only)."""
    adj = g.adjacency()
    lengths: set[int] = set()

    def walk(u: int, seen: set[int], length: int) -> None:
        if u == g.t:
            lengths.add(length)
            return
        for _, w in adj[u]:
            if w not in seen:
                seen.add(w)
                walk(w, seen, length + 1)
                seen.discard(w)

    walk(g.s, {g.s}, 0)
    return lengths
