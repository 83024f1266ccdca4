"""Shared fixtures and independent oracles for the test suite.

The oracles here (brute-force graphlet classifier, random graph builders)
are written from first principles so they cannot share bugs with the
library code they check.
"""

from __future__ import annotations

import itertools
import random

import pytest

from cnrg.multigraph import Multigraph


def random_connected_graph(rng: random.Random, n: int, extra: int | None = None,
                           multi: bool = False) -> Multigraph:
    """Random spanning tree plus extra edges; connected by construction."""
    g = Multigraph()
    g.add_node(0)
    for i in range(1, n):
        g.add_edge(i, rng.randrange(i))
    if extra is None:
        extra = rng.randint(0, 2 * n)
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        g.add_edge(u, v, rng.randint(1, 2) if multi else 1)
    return g


def random_graph(rng: random.Random, max_n: int = 40) -> Multigraph:
    """Random graph, sometimes disconnected, sometimes with multi-edges."""
    n = rng.randint(2, max_n)
    g = Multigraph()
    for v in range(n):
        g.add_node(v)
    comps = 1 if rng.random() < 0.7 else rng.randint(2, 3)
    cuts = sorted(rng.sample(range(1, n), comps - 1)) if n > comps > 1 else []
    for s, e in zip([0, *cuts], [*cuts, n]):
        for i in range(s + 1, e):
            g.add_edge(i, rng.randrange(s, i), rng.randint(1, 2))
    return g


def brute_census(g: Multigraph) -> dict[str, int]:
    """All-subsets induced graphlet counts, independent of the library path."""
    nodes = sorted(g.nodes())
    adj = {v: {u for u, _ in g.neighbors(v)} for v in nodes}
    counts = dict.fromkeys(
        ("g2_1", "g3_1", "g3_2", "g4_1", "g4_2", "g4_3", "g4_4", "g4_5", "g4_6"), 0)
    counts["g2_1"] = sum(1 for u, v in itertools.combinations(nodes, 2) if v in adj[u])
    for trip in itertools.combinations(nodes, 3):
        e = sum(1 for u, v in itertools.combinations(trip, 2) if v in adj[u])
        if e == 3:
            counts["g3_1"] += 1
        elif e == 2:
            counts["g3_2"] += 1
    four_types = {
        (6, (3, 3, 3, 3)): "g4_1",
        (5, (2, 2, 3, 3)): "g4_2",
        (4, (1, 2, 2, 3)): "g4_3",
        (4, (2, 2, 2, 2)): "g4_4",
        (3, (1, 1, 1, 3)): "g4_5",
        (3, (1, 1, 2, 2)): "g4_6",
    }
    for quad in itertools.combinations(nodes, 4):
        pairs = [(u, v) for u, v in itertools.combinations(quad, 2) if v in adj[u]]
        if len(pairs) < 3:
            continue
        deg = dict.fromkeys(quad, 0)
        for u, v in pairs:
            deg[u] += 1
            deg[v] += 1
        # connectivity over the induced subgraph
        seen = {quad[0]}
        frontier = [quad[0]]
        while frontier:
            cur = frontier.pop()
            for u, v in pairs:
                nxt = v if u == cur else u if v == cur else None
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        if len(seen) < 4:
            continue
        kind = four_types.get((len(pairs), tuple(sorted(deg.values()))))
        if kind is not None:
            counts[kind] += 1
    return counts


def triangle_of_triangles() -> Multigraph:
    """Three triangles wired in a triangle pattern, 9 nodes."""
    g = Multigraph()
    for base in (0, 3, 6):
        g.add_edge(base, base + 1)
        g.add_edge(base, base + 2)
        g.add_edge(base + 1, base + 2)
    g.add_edge(2, 3)
    g.add_edge(5, 6)
    g.add_edge(8, 0)
    return g


def two_cliques_bridged() -> Multigraph:
    """Two K4s joined through a middle node: 9 nodes, two clear sides."""
    g = Multigraph()
    for base in (0, 5):
        for u, v in itertools.combinations(range(base, base + 4), 2):
            g.add_edge(u, v)
    g.add_edge(3, 4)
    g.add_edge(4, 5)
    return g


@pytest.fixture(scope="session")
def karate_graph() -> Multigraph:
    from cnrg.datasets import karate

    return karate()
