"""Shared test helpers: independent oracles and a small diagram zoo."""

from __future__ import annotations

import itertools
from collections import defaultdict

import pytest

from knotcert.graphcore import Graph, edge
from knotcert.invariants import (
    ComponentPD,
    add_kink,
    braid_closure,
    unknot_pd,
)


def brute_cycle_count(g: Graph) -> int:
    """Count simple cycles by checking every vertex arrangement directly."""
    vs = sorted(g.vertices)
    count = 0
    for r in range(3, len(vs) + 1):
        for subset in itertools.combinations(vs, r):
            first, rest = subset[0], subset[1:]
            for perm in itertools.permutations(rest):
                if perm[0] > perm[-1]:
                    continue
                cyc = (first,) + perm
                if all(edge(cyc[i], cyc[(i + 1) % r]) in g.edges for i in range(r)):
                    count += 1
    return count


def brute_state_sum_at_one(pd: ComponentPD) -> int:
    """Sum (-2)^(loops-1) over all smoothing states, counting loops by
    walking the pairing multigraph rather than by union-find."""
    xids = sorted(pd.crossings)
    free = sum(1 for p in pd.passages if not p)
    total = 0
    for state in itertools.product((0, 1), repeat=len(xids)):
        nbrs = defaultdict(list)
        for choice, xid in zip(state, xids):
            x = pd.crossings[xid]
            o = x.over
            if choice == 0:
                pairs = [((o + 1) % 4, (o + 2) % 4), ((o + 3) % 4, o % 4)]
            else:
                pairs = [(o % 4, (o + 1) % 4), ((o + 2) % 4, (o + 3) % 4)]
            for a, b in pairs:
                nbrs[x.ends[a]].append(x.ends[b])
                nbrs[x.ends[b]].append(x.ends[a])
        seen = set()
        loops = free
        for s in nbrs:
            if s in seen:
                continue
            loops += 1
            stack = [s]
            while stack:
                t = stack.pop()
                if t in seen:
                    continue
                seen.add(t)
                stack.extend(nbrs[t])
        total += (-2) ** (loops - 1)
    return total


def right_trefoil_pd() -> ComponentPD:
    return braid_closure([(1, 1)] * 3, 2)


def left_trefoil_pd() -> ComponentPD:
    return braid_closure([(1, -1)] * 3, 2)


def figure8_pd() -> ComponentPD:
    return braid_closure([(1, 1), (2, -1), (1, 1), (2, -1)], 3)


def hopf_pd() -> ComponentPD:
    return braid_closure([(1, 1), (1, 1)], 2)


def kinked_unknot(signs) -> ComponentPD:
    pd = unknot_pd()
    for i, s in enumerate(signs):
        pd = add_kink(pd, 0, 0, s, f"k{i}", f"n{i}")
    return pd


@pytest.fixture(scope="session")
def pd_zoo() -> list[ComponentPD]:
    """Small diagrams exercising 0..8 crossings and 1..2 components."""
    return [
        unknot_pd(),
        kinked_unknot([1]),
        kinked_unknot([-1]),
        kinked_unknot([1, -1, 1]),
        right_trefoil_pd(),
        left_trefoil_pd(),
        figure8_pd(),
        hopf_pd(),
        braid_closure([(1, 1), (1, 1), (1, 1), (1, 1)], 2),   # (2,4) torus link
        braid_closure([(1, 1), (2, 1), (1, 1), (2, 1)], 3),
        braid_closure([(1, 1), (2, -1), (1, -1), (2, 1)], 3),
        braid_closure([(1, 1)] * 5, 2),                        # cinquefoil
        add_kink(right_trefoil_pd(), 0, 1, -1, "kx", "kn"),
    ]
