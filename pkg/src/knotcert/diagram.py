"""Combinatorial spatial-graph diagrams on the sphere.

A Diagram is a planar combinatorial map: graph vertices and crossing nodes
carry counterclockwise rotation lists of arc ids, and each abstract edge owns
a path alternating arcs and crossings.  Planarity is checked through the
rotation system (face tracing plus the Euler formula per connected component
of the shadow), so no coordinates are ever stored.

Cycle enumeration and knot/link extraction operate on these maps: a cycle of
the underlying graph selects a closed curve (or two disjoint ones), crossings
met by both selected strands are retained, and everything else is smoothed
away, yielding a ComponentPD for the invariant engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import AttachmentError, DiagramParseError, InputError
from .graphcore import Graph, adjacency, edge, make_graph
from .invariants import ComponentPD, PdCrossing, check_pd

Cycle = tuple[str, ...]


@dataclass(frozen=True)
class Crossing:
    ends: tuple[str, str, str, str]  # arc ids, counterclockwise
    over: int                        # 0: slots {0,2} over; 1: slots {1,3}


@dataclass(frozen=True)
class EdgePath:
    ends: tuple[str, str]
    path: tuple[str, ...]  # arc, (crossing, arc)*, read from ends[0] to ends[1]


@dataclass(frozen=True)
class Diagram:
    vertices: dict[str, tuple[str, ...]]
    crossings: dict[str, Crossing]
    edges: tuple[EdgePath, ...]


# ---------------------------------------------------------------------------
# parsing and serialization


def parse_diagram(text: str) -> Diagram:
    """Parse the JSON diagram format, rejecting structural inconsistencies."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramParseError(f"diagram file is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DiagramParseError("diagram must be a JSON object")
    for key in ("vertices", "crossings", "edges"):
        if key not in obj:
            raise DiagramParseError(f"diagram is missing the {key!r} field")
    if not isinstance(obj["vertices"], dict):
        raise DiagramParseError("'vertices' must map labels to arc lists")
    vertices = {}
    for v, rot in obj["vertices"].items():
        if not isinstance(rot, list) or not all(isinstance(a, str) for a in rot):
            raise DiagramParseError(f"vertices[{v!r}] must be a list of arc ids")
        vertices[str(v)] = tuple(rot)
    if not isinstance(obj["crossings"], dict):
        raise DiagramParseError("'crossings' must map ids to crossing objects")
    crossings = {}
    for xid, xc in obj["crossings"].items():
        if not isinstance(xc, dict) or "ends" not in xc or "over" not in xc:
            raise DiagramParseError(f"crossings[{xid!r}] needs 'ends' and 'over'")
        ends = xc["ends"]
        if not isinstance(ends, list) or len(ends) != 4:
            raise DiagramParseError(f"crossings[{xid!r}].ends must list exactly 4 arcs")
        if xc["over"] not in (0, 1):
            raise DiagramParseError(f"crossings[{xid!r}].over must be 0 or 1")
        crossings[str(xid)] = Crossing(tuple(str(a) for a in ends), int(xc["over"]))
    if not isinstance(obj["edges"], list):
        raise DiagramParseError("'edges' must be a list")
    edges = []
    for i, ep in enumerate(obj["edges"]):
        if not isinstance(ep, dict) or "ends" not in ep or "path" not in ep:
            raise DiagramParseError(f"edges[{i}] needs 'ends' and 'path'")
        ends = ep["ends"]
        if len(ends) != 2 or ends[0] == ends[1]:
            raise DiagramParseError(f"edges[{i}].ends must be two distinct vertices")
        u, v = str(ends[0]), str(ends[1])
        for w in (u, v):
            if w not in vertices:
                raise DiagramParseError(f"edges[{i}]: unknown vertex {w!r}")
        path = [str(p) for p in ep["path"]]
        if len(path) % 2 == 0 or not path:
            raise DiagramParseError(
                f"edges[{i}].path must alternate arc, crossing, ..., arc")
        for j, item in enumerate(path):
            if j % 2 == 1 and item not in crossings:
                raise DiagramParseError(f"edges[{i}].path[{j}]: unknown crossing {item!r}")
        edges.append(EdgePath((u, v), tuple(path)))

    d = Diagram(vertices, crossings, tuple(edges))
    counts: dict[str, int] = {}
    for rot in vertices.values():
        for a in rot:
            counts[a] = counts.get(a, 0) + 1
    for x in crossings.values():
        for a in x.ends:
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        a = bad[0]
        raise AttachmentError(
            f"arc {a!r} is referenced {counts[a]} times across rotation lists (need 2)")
    for i, ep in enumerate(edges):
        for j in range(0, len(ep.path), 2):
            if ep.path[j] not in counts:
                raise DiagramParseError(
                    f"edges[{i}].path[{j}]: arc {ep.path[j]!r} is attached nowhere")
    return d


def _canonical_rotation(rot: Sequence[str]) -> tuple[str, ...]:
    t = tuple(rot)
    if not t:
        return t
    return min(t[i:] + t[:i] for i in range(len(t)))


def serialize_diagram(d: Diagram) -> str:
    """Canonical text form: sorted keys, minimal rotations, sorted edge ends."""
    vertices = {v: list(_canonical_rotation(rot)) for v, rot in d.vertices.items()}
    crossings = {}
    for xid, x in d.crossings.items():
        best: Optional[tuple[tuple[str, ...], int]] = None
        for r in range(4):
            rotated = tuple(x.ends[(j + r) % 4] for j in range(4))
            if best is None or rotated < best[0]:
                best = (rotated, (x.over + r) % 2)
        crossings[xid] = {"ends": list(best[0]), "over": best[1]}
    edges = []
    for ep in d.edges:
        u, v = ep.ends
        path = ep.path
        if u > v:
            u, v = v, u
            path = tuple(reversed(path))
        edges.append({"ends": [u, v], "path": list(path)})
    edges.sort(key=lambda e: (e["ends"], e["path"]))
    obj = {"vertices": vertices, "crossings": crossings, "edges": edges}
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# validation


def _attachments(d: Diagram) -> dict[str, list[tuple[str, str, int]]]:
    att: dict[str, list[tuple[str, str, int]]] = {}
    for v in sorted(d.vertices):
        for pos, a in enumerate(d.vertices[v]):
            att.setdefault(a, []).append(("v", v, pos))
    for xid in sorted(d.crossings):
        for pos, a in enumerate(d.crossings[xid].ends):
            att.setdefault(a, []).append(("x", xid, pos))
    return att


def _resolve_passages(d: Diagram, used: dict[tuple[str, int], str]
                      ) -> tuple[dict[tuple[str, str], list[tuple[str, int, int]]], list[str]]:
    """Walk every edge path, assigning crossing slots.

    Returns {edge ends: [(crossing, slot in, slot out), ...]} plus violations.
    `used` collects globally claimed (crossing, slot) pairs.
    """
    out: dict[tuple[str, str], list[tuple[str, int, int]]] = {}
    problems: list[str] = []
    for ep in d.edges:
        events: list[tuple[str, int, int]] = []
        path = ep.path
        ok = True
        for j in range(1, len(path), 2):
            xid, prev, nxt = path[j], path[j - 1], path[j + 1]
            x = d.crossings[xid]
            slot = None
            for s in range(4):
                if x.ends[s] != prev or x.ends[(s + 2) % 4] != nxt:
                    continue
                if (xid, s) in used or (xid, (s + 2) % 4) in used:
                    continue
                slot = s
                break
            if slot is None:
                problems.append(
                    f"edge {ep.ends[0]}-{ep.ends[1]}: no free opposite-slot passage "
                    f"through crossing {xid} between arcs {prev!r} and {nxt!r}")
                ok = False
                break
            used[(xid, slot)] = f"{ep.ends[0]}-{ep.ends[1]}"
            used[(xid, (slot + 2) % 4)] = f"{ep.ends[0]}-{ep.ends[1]}"
            events.append((xid, slot, (slot + 2) % 4))
        if ok:
            out[ep.ends] = events
    return out, problems


def _face_orbits(d: Diagram, att: dict[str, list[tuple[str, str, int]]]) -> list[list]:
    rotations: dict[tuple[str, str], tuple[str, ...]] = {}
    for v, rot in d.vertices.items():
        rotations[("v", v)] = tuple(rot)
    for xid, x in d.crossings.items():
        rotations[("x", xid)] = x.ends
    darts = [(a, i) for a in sorted(att) for i in range(2)]

    def face_next(dart):
        a, i = dart
        kind, node, pos = att[a][i]
        rot = rotations[(kind, node)]
        prev_pos = (pos - 1) % len(rot)
        a2 = rot[prev_pos]
        here = (kind, node, prev_pos)
        other = 1 if att[a2][0] == here else 0
        return (a2, other)

    seen: set[tuple[str, int]] = set()
    orbits = []
    for start in darts:
        if start in seen:
            continue
        orbit = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = face_next(cur)
        orbits.append(orbit)
    return orbits


def validate(d: Diagram) -> list[str]:
    """Report every violated diagram invariant; an empty report means valid."""
    report: list[str] = []
    for xid, x in d.crossings.items():
        if len(x.ends) != 4:
            report.append(f"crossing {xid}: rotation list has {len(x.ends)} ends, need 4")
        if x.over not in (0, 1):
            report.append(f"crossing {xid}: over bit {x.over!r} is not 0 or 1")

    att = _attachments(d)
    for a in sorted(att):
        if len(att[a]) != 2:
            report.append(f"arc {a!r} has {len(att[a])} attachment ends, need 2")
    arc_set = set(att)

    path_arcs: dict[str, tuple[str, str]] = {}
    seen_pairs: set[tuple[str, str]] = set()
    for ep in d.edges:
        u, v = ep.ends
        if u == v:
            report.append(f"edge {u}-{v}: loops are not simple")
        key = edge(u, v) if u != v else (u, v)
        if key in seen_pairs:
            report.append(f"edge {u}-{v}: duplicate edge pair (underlying graph not simple)")
        seen_pairs.add(key)
        for w in (u, v):
            if w not in d.vertices:
                report.append(f"edge {u}-{v}: endpoint {w!r} is not a vertex node")
        for j, item in enumerate(ep.path):
            if j % 2 == 0:
                if item not in arc_set:
                    report.append(f"edge {u}-{v}: path arc {item!r} is attached nowhere")
                elif item in path_arcs:
                    report.append(
                        f"arc {item!r} appears in more than one edge path "
                        f"({path_arcs[item][0]}-{path_arcs[item][1]} and {u}-{v})")
                else:
                    path_arcs[item] = ep.ends
            elif item not in d.crossings:
                report.append(f"edge {u}-{v}: path names unknown crossing {item!r}")
        # path endpoints must attach at the edge's end vertices
        if ep.path:
            first, last = ep.path[0], ep.path[-1]
            if first in att and not any(
                    k == "v" and n == u for k, n, _ in att[first]):
                report.append(f"edge {u}-{v}: first arc {first!r} does not attach at {u}")
            if last in att and not any(
                    k == "v" and n == v for k, n, _ in att[last]):
                report.append(f"edge {u}-{v}: last arc {last!r} does not attach at {v}")

    uncovered = sorted(arc_set - set(path_arcs))
    for a in uncovered:
        report.append(f"arc {a!r} belongs to no edge path (paths must partition the arcs)")

    if any(len(x.ends) != 4 for x in d.crossings.values()):
        return report

    used: dict[tuple[str, int], str] = {}
    events, problems = _resolve_passages(d, used)
    report.extend(problems)
    passage_count: dict[str, int] = {xid: 0 for xid in d.crossings}
    for evs in events.values():
        for xid, _, _ in evs:
            passage_count[xid] += 1
    if not problems:
        for xid in sorted(d.crossings):
            if passage_count[xid] != 2:
                report.append(
                    f"crossing {xid} is traversed by {passage_count[xid]} passages, need 2")

    if any(len(lst) != 2 for lst in att.values()):
        return report

    # planarity: each shadow component must satisfy V - E + F = 2
    parent: dict[tuple[str, str], tuple[str, str]] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    nodes = [("v", v) for v in d.vertices] + [("x", xid) for xid in d.crossings]
    for n in nodes:
        parent.setdefault(n, n)
    for a, lst in att.items():
        (k1, n1, _), (k2, n2, _) = lst
        union((k1, n1), (k2, n2))

    orbits = _face_orbits(d, att)
    comp_stats: dict[tuple[str, str], list[int]] = {}
    for n in nodes:
        comp_stats.setdefault(find(n), [0, 0, 0])[0] += 1
    for a, lst in att.items():
        k, nname, _ = lst[0]
        comp_stats[find((k, nname))][1] += 1
    for orbit in orbits:
        a0 = orbit[0][0]
        k, nname, _ = att[a0][0]
        comp_stats[find((k, nname))][2] += 1
    for root, (nv, ne, nf) in sorted(comp_stats.items()):
        if ne == 0:
            continue  # an isolated vertex is trivially planar
        if nv - ne + nf != 2:
            report.append(
                f"component containing {root[1]!r} is not planar: "
                f"V - E + F = {nv} - {ne} + {nf} = {nv - ne + nf}, need 2")
    return report


def underlying_graph(d: Diagram) -> Graph:
    """Abstract graph: the diagram's vertex nodes, one edge per edge path."""
    pairs = [ep.ends for ep in d.edges]
    keys = [edge(u, v) for u, v in pairs]
    if len(set(keys)) != len(keys):
        raise InputError("duplicate edge paths: underlying graph is not simple")
    return make_graph(d.vertices.keys(), pairs)


# ---------------------------------------------------------------------------
# cycles


def canonical_cycle(seq: Sequence[str]) -> Cycle:
    """Rotate so the smallest vertex leads, direction by smaller successor."""
    t = tuple(seq)
    if len(t) < 3 or len(set(t)) != len(t):
        raise InputError(f"not a simple cycle: {t!r}")
    i = t.index(min(t))
    fwd = t[i:] + t[:i]
    r = tuple(reversed(t))
    j = r.index(min(r))
    bwd = r[j:] + r[:j]
    return min(fwd, bwd)


def enumerate_cycles(g: Graph) -> list[Cycle]:
    """Every simple cycle exactly once, in canonical (lexicographic) order."""
    adj = {v: sorted(ws) for v, ws in adjacency(g).items()}
    out: list[Cycle] = []
    for root in sorted(g.vertices):
        path = [root]
        onpath = {root}

        def dfs(v: str):
            for w in adj[v]:
                if w == root:
                    if len(path) >= 3 and path[1] < path[-1]:
                        out.append(tuple(path))
                elif w > root and w not in onpath:
                    path.append(w)
                    onpath.add(w)
                    dfs(w)
                    path.pop()
                    onpath.remove(w)

        dfs(root)
    return sorted(out)


def disjoint_cycle_pairs(g: Graph) -> list[tuple[Cycle, Cycle]]:
    """All unordered pairs of vertex-disjoint cycles, deterministically ordered."""
    cycles = enumerate_cycles(g)
    sets = [set(c) for c in cycles]
    pairs = []
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if not sets[i] & sets[j]:
                pairs.append((cycles[i], cycles[j]))
    return pairs


# ---------------------------------------------------------------------------
# extraction


def _edge_events(d: Diagram) -> dict[tuple[str, str], list[tuple[str, int, int]]]:
    used: dict[tuple[str, int], str] = {}
    events, problems = _resolve_passages(d, used)
    if problems:
        raise InputError("diagram is not valid: " + "; ".join(problems))
    return events


def _cycle_edges(cycle: Cycle) -> list[tuple[str, str]]:
    return [edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def extract_component_pd(d: Diagram, cycles: Sequence[Cycle]) -> ComponentPD:
    """Planar-diagram code of the closed curve(s) selected by 1 or 2 cycles.

    Crossings are retained only when both strands lie on selected edges; a
    crossing met by one selected strand is smoothed through.  A cycle meeting
    a crossing on both strands keeps it as a genuine self-crossing.
    """
    cycles = [tuple(c) for c in cycles]
    if not 1 <= len(cycles) <= 2:
        raise InputError("extract_component_pd takes 1 or 2 cycles")
    g = underlying_graph(d)
    for c in cycles:
        if len(c) < 3 or len(set(c)) != len(c):
            raise InputError(f"not a simple cycle: {c!r}")
        for e in _cycle_edges(c):
            if e not in g.edges:
                raise InputError(f"cycle edge {e[0]}-{e[1]} is not in the diagram")
    if len(cycles) == 2 and set(cycles[0]) & set(cycles[1]):
        raise InputError("the two cycles must be vertex-disjoint")

    events = _edge_events(d)
    selected: set[tuple[str, str]] = set()
    for c in cycles:
        selected.update(_cycle_edges(c))

    # which crossings keep both strands
    incident: dict[str, list[tuple[str, str]]] = {}
    for ep in d.edges:
        e = edge(*ep.ends)
        for xid, _, _ in events[ep.ends]:
            incident.setdefault(xid, []).append(e)
    retained = {
        xid for xid, es in incident.items()
        if len(es) == 2 and all(e in selected for e in es)
    }

    comp_segments: list[tuple[str, ...]] = []
    comp_passages: list[tuple[tuple[str, int], ...]] = []
    pd_ends: dict[str, list[Optional[str]]] = {xid: [None] * 4 for xid in retained}
    for ci, c in enumerate(cycles):
        evs: list[tuple[str, int, int]] = []
        n = len(c)
        for i in range(n):
            x, y = c[i], c[(i + 1) % n]
            e = edge(x, y)
            stored = next(ep for ep in d.edges if edge(*ep.ends) == e)
            ev = events[stored.ends]
            if stored.ends[0] == x:
                walk = ev
            else:
                walk = [(xid, s_out, s_in) for xid, s_in, s_out in reversed(ev)]
            evs.extend(e2 for e2 in walk if e2[0] in retained)
        if not evs:
            comp_segments.append((f"s{ci}.0",))
            comp_passages.append(())
            continue
        m = len(evs)
        segs = tuple(f"s{ci}.{j}" for j in range(m))
        for j, (xid, s_in, s_out) in enumerate(evs):
            pd_ends[xid][s_in] = segs[(j - 1) % m]
            pd_ends[xid][s_out] = segs[j]
        comp_segments.append(segs)
        comp_passages.append(tuple(
            (evs[(j + 1) % m][0], evs[(j + 1) % m][1]) for j in range(m)))

    crossings = {}
    for xid in retained:
        ends = pd_ends[xid]
        if any(s is None for s in ends):
            raise InputError(f"internal extraction error at crossing {xid}")
        crossings[xid] = PdCrossing(tuple(ends), d.crossings[xid].over)
    pd = ComponentPD(tuple(comp_segments), crossings, tuple(comp_passages))
    check_pd(pd)
    return pd


# ---------------------------------------------------------------------------
# symmetry


@dataclass(frozen=True)
class SymmetryResult:
    ok: bool
    crossing_map: Optional[dict[str, str]] = None
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def check_symmetry(d: Diagram, vertex_map: Mapping[str, str],
                   reflect: bool, flip_over_under: bool) -> SymmetryResult:
    """Does the vertex map extend to a diagram self-correspondence?

    Rotation lists must map onto rotation lists (reversed when reflect is
    set) and over/under data must map directly, or swapped at every crossing
    when flip_over_under is set.  The search runs over crossing assignments
    pruned by which pair of edges meets at each crossing.
    """
    vs = set(d.vertices)
    if set(vertex_map) != vs or set(vertex_map.values()) != vs:
        raise InputError("vertex_map is not a bijection on the diagram's vertices")

    by_pair: dict[tuple[str, str], EdgePath] = {}
    for ep in d.edges:
        by_pair[edge(*ep.ends)] = ep
    for u, v in by_pair:
        if edge(vertex_map[u], vertex_map[v]) not in by_pair:
            return SymmetryResult(False, reason=f"edge {u}-{v} has no image edge")

    events = _edge_events(d)
    xs_pair: dict[str, list[tuple[str, str]]] = {}
    for ep in d.edges:
        e = edge(*ep.ends)
        for xid, _, _ in events[ep.ends]:
            xs_pair.setdefault(xid, []).append(e)
    pair_key = {xid: tuple(sorted(es)) for xid, es in xs_pair.items()}

    candidates: dict[str, list[str]] = {}
    for xid, (e1, e2) in pair_key.items():
        img = tuple(sorted([
            edge(vertex_map[e1[0]], vertex_map[e1[1]]),
            edge(vertex_map[e2[0]], vertex_map[e2[1]]),
        ]))
        candidates[xid] = sorted(y for y, pk in pair_key.items() if pk == img)
        if not candidates[xid]:
            return SymmetryResult(False, reason=f"crossing {xid} has no candidate image")

    xids = sorted(d.crossings)

    def verify(tau: dict[str, str]) -> bool:
        # arc correspondence induced edge by edge
        arc_map: dict[str, str] = {}
        for e, ep in by_pair.items():
            u, v = ep.ends
            e_img = edge(vertex_map[u], vertex_map[v])
            ep2 = by_pair[e_img]
            arcs1 = ep.path[0::2]
            xs1 = ep.path[1::2]
            arcs2 = ep2.path[0::2]
            xs2 = list(ep2.path[1::2])
            if vertex_map[u] != ep2.ends[0]:
                arcs2 = tuple(reversed(arcs2))
                xs2 = list(reversed(xs2))
            if len(arcs1) != len(arcs2):
                return False
            if [tau[x] for x in xs1] != xs2:
                return False
            for a, b in zip(arcs1, arcs2):
                arc_map[a] = b
        # vertex rotations
        for v, rot in d.vertices.items():
            img = tuple(arc_map[a] for a in rot)
            if reflect:
                img = tuple(reversed(img))
            target = d.vertices[vertex_map[v]]
            n = len(target)
            if len(img) != n:
                return False
            if not any(img[i:] + img[:i] == target for i in range(n)):
                return False
        # crossing rotations and over bits
        flip = 1 if flip_over_under else 0
        for xid in xids:
            x = d.crossings[xid]
            y = d.crossings[tau[xid]]
            mapped = [arc_map[a] for a in x.ends]
            ok_r = None
            for r in range(4):
                if reflect:
                    cand = tuple(mapped[(r - j) % 4] for j in range(4))
                else:
                    cand = tuple(mapped[(j - r) % 4] for j in range(4))
                if cand == y.ends and (x.over + r + flip) % 2 == y.over:
                    ok_r = r
                    break
            if ok_r is None:
                return False
        return True

    def backtrack(i: int, tau: dict[str, str], used: set[str]) -> Optional[dict[str, str]]:
        if i == len(xids):
            return dict(tau) if verify(tau) else None
        xid = xids[i]
        for y in candidates[xid]:
            if y in used:
                continue
            tau[xid] = y
            used.add(y)
            got = backtrack(i + 1, tau, used)
            if got is not None:
                return got
            del tau[xid]
            used.remove(y)
        return None

    tau = backtrack(0, {}, set())
    if tau is None:
        return SymmetryResult(False, reason="no compatible crossing correspondence")
    return SymmetryResult(True, crossing_map=tau)


# ---------------------------------------------------------------------------
# building diagrams from planar-diagram codes


def diagram_from_pd(pd: ComponentPD, marks: Mapping[str, Sequence[str]]) -> Diagram:
    """Inflate a PD into a Diagram by placing graph vertices on segments.

    `marks` maps segment ids to the vertex labels inserted along them, in
    traversal order.  Every component needs at least one marked segment so
    that the arcs partition into edge paths (and at least three vertices in
    total to keep the underlying graph simple).
    """
    check_pd(pd)
    all_marks = [m for ms in marks.values() for m in ms]
    if len(set(all_marks)) != len(all_marks):
        raise InputError("vertex labels in marks must be distinct")
    for s in marks:
        if not any(s in segs for segs in pd.components):
            raise InputError(f"marks name unknown segment {s!r}")

    vertices: dict[str, tuple[str, ...]] = {}
    crossings: dict[str, list[Optional[str]]] = {
        xid: [None] * 4 for xid in pd.crossings}
    edge_paths: list[EdgePath] = []

    for ci, (segs, psgs) in enumerate(zip(pd.components, pd.passages)):
        if not any(marks.get(s) for s in segs):
            raise InputError(
                f"component {ci} has no marked segment; its arcs would belong to no edge")
        n = len(segs)
        if not psgs:
            # free loop: m marks cut the loop into m arcs
            s = segs[0]
            ms = list(marks.get(s, ()))
            m = len(ms)
            pieces = [f"{s}.{i}" for i in range(m)]
            for i, vlabel in enumerate(ms):
                vertices[vlabel] = (pieces[(i - 1) % m], pieces[i % m])
            for i in range(m):
                u, v = ms[i], ms[(i + 1) % m]
                path = (pieces[i],)
                if u > v:
                    u, v = v, u
                edge_paths.append(EdgePath((u, v), path))
            continue
        # pieces per segment; tag crossing slots with the right piece
        pieces: dict[str, list[str]] = {}
        for j, s in enumerate(segs):
            ms = marks.get(s, ())
            ps = [f"{s}.{i}" for i in range(len(ms) + 1)] if ms else [s]
            pieces[s] = ps
            for i, vlabel in enumerate(ms):
                vertices[vlabel] = (ps[i], ps[i + 1])
        for j in range(n):
            xid, s_in = psgs[j]
            crossings[xid][s_in] = pieces[segs[j]][-1]
            crossings[xid][(s_in + 2) % 4] = pieces[segs[(j + 1) % n]][0]
        # walk the component, splitting the item stream at vertices
        stream: list[tuple[str, str]] = []  # ("a", arc) | ("x", xid) | ("v", label)
        for j, s in enumerate(segs):
            ms = marks.get(s, ())
            ps = pieces[s]
            for i in range(len(ps)):
                stream.append(("a", ps[i]))
                if i < len(ms):
                    stream.append(("v", ms[i]))
            stream.append(("x", psgs[j][0]))
        first_v = next(i for i, (k, _) in enumerate(stream) if k == "v")
        stream = stream[first_v:] + stream[:first_v]
        prev_vertex = stream[0][1]
        run: list[str] = []
        for k, item in stream[1:] + [stream[0]]:
            if k == "v":
                u, v = prev_vertex, item
                path = tuple(run)
                if u > v:
                    u, v = v, u
                    path = tuple(reversed(path))
                edge_paths.append(EdgePath((u, v), path))
                prev_vertex = item
                run = []
            else:
                run.append(item)

    xfinal = {}
    for xid, ends in crossings.items():
        if any(e is None for e in ends):
            raise InputError(f"crossing {xid} ends not fully covered by components")
        xfinal[xid] = Crossing(tuple(ends), pd.crossings[xid].over)
    edge_paths.sort(key=lambda ep: (ep.ends, ep.path))
    return Diagram(vertices, xfinal, tuple(edge_paths))
