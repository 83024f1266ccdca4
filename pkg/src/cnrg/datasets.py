"""Small classic benchmark graphs for tests and examples.

Karate and Les Miserables ship with networkx. The dolphin social network
does not; load it from a local edge list fetched by scripts/fetch_dolphins.py.
"""

from __future__ import annotations

import os

import networkx as nx

from .multigraph import Multigraph, read_edgelist

DOLPHINS_ENV = "CNRG_DOLPHINS"
DOLPHINS_DEFAULT = os.path.join("data", "dolphins.txt")


def _from_networkx(G: nx.Graph) -> Multigraph:
    g = Multigraph()
    mapping = {u: i for i, u in enumerate(G.nodes())}
    for u in G.nodes():
        g.add_node(mapping[u])
    for u, v in G.edges():
        if u != v:
            g.add_edge(mapping[u], mapping[v])
    return g


def karate() -> Multigraph:
    """Zachary's karate club: 34 nodes, 78 edges."""
    return _from_networkx(nx.karate_club_graph())


def les_miserables() -> Multigraph:
    """Les Miserables character co-occurrence, simple edges: 77 nodes, 254 edges."""
    return _from_networkx(nx.les_miserables_graph())


def dolphins(path: str | None = None) -> Multigraph:
    """Doubtful Sound bottlenose dolphins: 62 nodes, 159 edges.

    Looks for an edge list at `path`, then $CNRG_DOLPHINS, then data/dolphins.txt.
    """
    candidates = [p for p in (path, os.environ.get(DOLPHINS_ENV), DOLPHINS_DEFAULT) if p]
    for cand in candidates:
        if os.path.exists(cand):
            return read_edgelist(cand)
    raise FileNotFoundError(
        "dolphins edge list not found (looked at: "
        + ", ".join(candidates)
        + "); run scripts/fetch_dolphins.py on a network-connected machine to download it"
    )
