"""Abstract simple graphs, triangle-Y / Y-triangle moves, and isomorphism search.

Vertices are string labels, edges unordered label pairs.  All values are
immutable and every operation is a pure function, so concurrent use needs no
synchronization.  The isomorphism search (degree-refinement plus backtracking)
is meant for the graphs this package works with, roughly |V| <= 20.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import (
    DegreeNotThree,
    EdgeAbsent,
    InputError,
    LabelClash,
    ScriptError,
    TriangleAbsent,
)

Edge = tuple[str, str]


def edge(u: str, v: str) -> Edge:
    """Normalize an unordered pair to a sorted tuple; loops are rejected."""
    if u == v:
        raise InputError(f"loop edge {u!r}-{v!r} not allowed in a simple graph")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[str]
    edges: frozenset[Edge]


def make_graph(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> Graph:
    vs = frozenset(vertices)
    es = frozenset(edge(u, v) for u, v in edges)
    for u, v in es:
        if u not in vs or v not in vs:
            raise InputError(f"edge {u}-{v} has an endpoint outside the vertex set")
    return Graph(vs, es)


@lru_cache(maxsize=None)
def adjacency(g: Graph) -> dict[str, frozenset[str]]:
    nbrs: dict[str, set[str]] = {v: set() for v in g.vertices}
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return {v: frozenset(ws) for v, ws in nbrs.items()}


def degree(g: Graph, v: str) -> int:
    return len(adjacency(g)[v])


def is_connected(g: Graph) -> bool:
    if not g.vertices:
        return True
    adj = adjacency(g)
    seen = set()
    stack = [min(g.vertices)]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v] - seen)
    return seen == set(g.vertices)


def complete_graph(labels: Iterable[str]) -> Graph:
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise InputError("complete_graph labels must be distinct")
    if not labels:
        raise InputError("complete_graph needs at least one label")
    es = [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]]
    return make_graph(labels, es)


# ---------------------------------------------------------------------------
# moves

def delta_y(g: Graph, triangle: Iterable[str], center: str) -> Graph:
    """Remove the edges of the triangle and join a fresh center to its corners."""
    x, y, z = sorted(triangle)
    tri_edges = [edge(x, y), edge(x, z), edge(y, z)]
    missing = [e for e in tri_edges if e not in g.edges]
    if missing:
        raise TriangleAbsent(f"{{{x},{y},{z}}} is not a triangle: missing {missing}")
    if center in g.vertices:
        raise LabelClash(f"center label {center!r} already used")
    new_edges = (g.edges - frozenset(tri_edges)) | {edge(center, w) for w in (x, y, z)}
    return Graph(g.vertices | {center}, frozenset(new_edges))


def y_delta(g: Graph, center: str) -> Graph:
    """Delete a degree-3 center and add the triangle on its neighbors.

    A neighbor pair that is already adjacent keeps its single existing edge,
    so the result stays simple.
    """
    if center not in g.vertices:
        raise InputError(f"vertex {center!r} not in graph")
    nbrs = sorted(adjacency(g)[center])
    if len(nbrs) != 3:
        raise DegreeNotThree(f"vertex {center!r} has degree {len(nbrs)}, need exactly 3")
    x, y, z = nbrs
    kept = frozenset(e for e in g.edges if center not in e)
    added = {edge(x, y), edge(x, z), edge(y, z)}
    return Graph(g.vertices - {center}, kept | added)


def delete_edge(g: Graph, pair: tuple[str, str]) -> Graph:
    e = edge(*pair)
    if e not in g.edges:
        raise EdgeAbsent(f"{e[0]}-{e[1]} is not an edge")
    return Graph(g.vertices, g.edges - {e})


def contract_edge(g: Graph, pair: tuple[str, str]) -> Graph:
    """Merge the endpoints into the lexicographically smaller label.

    Loops are dropped and parallel edges collapse, so the result is simple.
    """
    e = edge(*pair)
    if e not in g.edges:
        raise EdgeAbsent(f"{e[0]}-{e[1]} is not an edge")
    keep, gone = e
    new_edges = set()
    for u, v in g.edges - {e}:
        u2 = keep if u == gone else u
        v2 = keep if v == gone else v
        if u2 != v2:
            new_edges.add(edge(u2, v2))
    return Graph(g.vertices - {gone}, frozenset(new_edges))


@dataclass(frozen=True)
class DeltaY:
    triangle: tuple[str, str, str]
    center: str


@dataclass(frozen=True)
class YDelta:
    center: str


@dataclass(frozen=True)
class DeleteEdge:
    edge: Edge


@dataclass(frozen=True)
class ContractEdge:
    edge: Edge


Move = Union[DeltaY, YDelta, DeleteEdge, ContractEdge]


@dataclass(frozen=True)
class MoveScript:
    steps: tuple[Move, ...]


def apply_move(g: Graph, move: Move) -> Graph:
    if isinstance(move, DeltaY):
        return delta_y(g, move.triangle, move.center)
    if isinstance(move, YDelta):
        return y_delta(g, move.center)
    if isinstance(move, DeleteEdge):
        return delete_edge(g, move.edge)
    if isinstance(move, ContractEdge):
        return contract_edge(g, move.edge)
    raise InputError(f"unknown move {move!r}")


def apply_script(g: Graph, script: MoveScript) -> tuple[Graph, list[Graph]]:
    """Apply the steps in order; returns the final graph and every intermediate."""
    intermediates: list[Graph] = []
    cur = g
    for i, step in enumerate(script.steps):
        try:
            cur = apply_move(cur, step)
        except InputError as exc:
            raise ScriptError(i, step, exc) from exc
        intermediates.append(cur)
    return cur, intermediates


K7_LABELS = ("a", "b", "c", "d", "e", "f", "g")

# The packaged seven-move construction script: five triangle-Y moves on K7,
# then two Y-triangle moves deleting vertices a and b.
G7_MOVE_SCRIPT = MoveScript((
    DeltaY(("a", "b", "c"), "h"),
    DeltaY(("a", "d", "e"), "i"),
    DeltaY(("a", "f", "g"), "j"),
    DeltaY(("b", "d", "f"), "k"),
    DeltaY(("b", "e", "g"), "l"),
    YDelta("a"),
    YDelta("b"),
))


def construct_g7() -> Graph:
    """The ten-vertex graph produced by running G7_MOVE_SCRIPT on K7."""
    final, _ = apply_script(complete_graph(K7_LABELS), G7_MOVE_SCRIPT)
    return final


# ---------------------------------------------------------------------------
# isomorphism

def _refine(adj1: dict[str, frozenset[str]], adj2: dict[str, frozenset[str]]):
    """Joint color refinement over both vertex sets (shared color space)."""
    colors: dict[tuple[int, str], int] = {}
    cur = {(i, v): len(a[v]) for i, a in ((1, adj1), (2, adj2)) for v in a}
    while True:
        sig = {}
        for (i, v) in cur:
            a = adj1 if i == 1 else adj2
            sig[(i, v)] = (cur[(i, v)], tuple(sorted(cur[(i, w)] for w in a[v])))
        ranks = {s: r for r, s in enumerate(sorted(set(sig.values())))}
        nxt = {k: ranks[sig[k]] for k in cur}
        if nxt == cur:
            colors = cur
            break
        cur = nxt
    c1 = {v: colors[(1, v)] for v in adj1}
    c2 = {v: colors[(2, v)] for v in adj2}
    return c1, c2


def is_isomorphic(g1: Graph, g2: Graph) -> Optional[dict[str, str]]:
    """Return an adjacency-preserving vertex bijection, or None.

    Deterministic: vertices of g1 are mapped in lexicographic order and
    candidate images are tried in lexicographic order, so the first witness in
    that canonical search order is always the one returned.
    """
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    adj1, adj2 = adjacency(g1), adjacency(g2)
    c1, c2 = _refine(adj1, adj2)
    from collections import Counter
    if Counter(c1.values()) != Counter(c2.values()):
        return None

    order = sorted(g1.vertices)
    candidates = {v: sorted(w for w in g2.vertices if c2[w] == c1[v]) for v in order}
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        for x in adj1[v]:
            y = mapping.get(x)
            if y is not None and y not in adj2[w]:
                return False
        # mapped neighbors of w must all be images of neighbors of v
        for x, y in mapping.items():
            if (y in adj2[w]) != (x in adj1[v]):
                return False
        return True

    def search(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if search(idx + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    return dict(mapping) if search(0) else None


def verify_automorphism(g: Graph, mapping: dict[str, str]) -> bool:
    """True iff the bijection sends edges to edges bijectively."""
    if set(mapping) != set(g.vertices) or set(mapping.values()) != set(g.vertices):
        raise InputError("mapping is not a bijection on the vertex set")
    return all(edge(mapping[u], mapping[v]) in g.edges for u, v in g.edges)


# ---------------------------------------------------------------------------
# file formats

def graph_to_json(g: Graph) -> str:
    obj = {
        "vertices": sorted(g.vertices),
        "edges": [list(e) for e in sorted(g.edges)],
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def graph_from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"graph file is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise InputError("graph file must be an object with 'vertices' and 'edges'")
    return make_graph(obj["vertices"], [tuple(e) for e in obj["edges"]])


def script_to_json(script: MoveScript) -> str:
    steps = []
    for m in script.steps:
        if isinstance(m, DeltaY):
            steps.append({"op": "deltaY", "triangle": sorted(m.triangle), "center": m.center})
        elif isinstance(m, YDelta):
            steps.append({"op": "yDelta", "center": m.center})
        elif isinstance(m, DeleteEdge):
            steps.append({"op": "deleteEdge", "edge": list(m.edge)})
        elif isinstance(m, ContractEdge):
            steps.append({"op": "contractEdge", "edge": list(m.edge)})
        else:
            raise InputError(f"unknown move {m!r}")
    return json.dumps({"steps": steps}, indent=2, sort_keys=True) + "\n"


def script_from_json(text: str) -> MoveScript:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"script file is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or not isinstance(obj.get("steps"), list):
        raise InputError("script file must be an object with a 'steps' list")
    steps: list[Move] = []
    for i, s in enumerate(obj["steps"]):
        if not isinstance(s, dict) or "op" not in s:
            raise InputError(f"steps[{i}]: each step needs an 'op' field")
        op = s["op"]
        try:
            if op == "deltaY":
                t = s["triangle"]
                if len(t) != 3 or len(set(t)) != 3:
                    raise InputError(f"steps[{i}]: triangle must be 3 distinct labels")
                steps.append(DeltaY(tuple(sorted(t)), s["center"]))
            elif op == "yDelta":
                steps.append(YDelta(s["center"]))
            elif op == "deleteEdge":
                steps.append(DeleteEdge(edge(*s["edge"])))
            elif op == "contractEdge":
                steps.append(ContractEdge(edge(*s["edge"])))
            else:
                raise InputError(f"steps[{i}]: unknown op {op!r}")
        except KeyError as exc:
            raise InputError(f"steps[{i}]: missing field {exc}") from exc
    return MoveScript(tuple(steps))
