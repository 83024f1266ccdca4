"""Dendrogram construction via pluggable hierarchical clustering strategies.

A dendrogram is a rooted arena tree whose leaves are graph nodes and whose
internal nodes are cluster merges (the rule candidates). Strategies:
recursive Louvain (default), random near-equal bipartition, and Fiedler
spectral bipartition via shifted power iteration.

Disconnected graphs get one synthetic root over per-component trees; every
component is clustered with identical seeding, so isomorphic components
yield mirrored subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .errors import GraphError
from .multigraph import Multigraph
from .rng import substream, substream_seed

STRATEGIES = ("louvain", "random", "fiedler")

_POWER_ITER_CAP = 10_000
_POWER_TOL = 1e-8

# nested tree form: a leaf is a node id, an internal node is a list of subtrees
Nested = int | list


@dataclass
class DNode:
    idx: int
    parent: int | None
    children: list[int]
    leaf_node: int | None
    leaf_count: int
    min_leaf: int
    level: int  # depth from root; smaller = nearer the root


@dataclass
class Dendrogram:
    arena: list[DNode] = field(default_factory=list)
    root: int = 0

    @classmethod
    def from_nested(cls, nested: Nested) -> "Dendrogram":
        d = cls()

        def build(sub: Nested, parent: int | None, level: int) -> int:
            idx = len(d.arena)
            if isinstance(sub, int):
                d.arena.append(DNode(idx, parent, [], sub, 1, sub, level))
                return idx
            node = DNode(idx, parent, [], None, 0, 0, level)
            d.arena.append(node)
            node.children = [build(c, idx, level + 1) for c in sub]
            node.leaf_count = sum(d.arena[c].leaf_count for c in node.children)
            node.min_leaf = min(d.arena[c].min_leaf for c in node.children)
            return idx

        d.root = build(nested, None, 0)
        return d

    def is_empty(self) -> bool:
        """True once the root itself has become a leaf."""
        return self.arena[self.root].leaf_node is not None

    def internal_nodes(self) -> list[int]:
        """Alive internal node indices, preorder from the root."""
        out: list[int] = []
        stack = [self.root]
        while stack:
            idx = stack.pop()
            node = self.arena[idx]
            if node.leaf_node is None:
                out.append(idx)
                stack.extend(reversed(node.children))
        return out

    def leaves_under(self, idx: int) -> list[int]:
        out: list[int] = []
        stack = [idx]
        while stack:
            node = self.arena[stack.pop()]
            if node.leaf_node is not None:
                out.append(node.leaf_node)
            else:
                stack.extend(node.children)
        return sorted(out)

    def ancestors(self, idx: int) -> list[int]:
        out = []
        cur = self.arena[idx].parent
        while cur is not None:
            out.append(cur)
            cur = self.arena[cur].parent
        return out

    def is_ancestor(self, a: int, b: int) -> bool:
        cur = self.arena[b].parent
        while cur is not None:
            if cur == a:
                return True
            cur = self.arena[cur].parent
        return False

    def replace_subtree(self, idx: int, new_leaf: int) -> None:
        """Turn the subtree at idx into a leaf for `new_leaf`; refresh caches on the root path."""
        node = self.arena[idx]
        node.children = []
        node.leaf_node = new_leaf
        node.leaf_count = 1
        node.min_leaf = new_leaf
        cur = node.parent
        while cur is not None:
            anc = self.arena[cur]
            anc.leaf_count = sum(self.arena[c].leaf_count for c in anc.children)
            anc.min_leaf = min(self.arena[c].min_leaf for c in anc.children)
            cur = anc.parent

    def nested(self) -> Nested:
        def walk(idx: int) -> Nested:
            node = self.arena[idx]
            if node.leaf_node is not None:
                return node.leaf_node
            return [walk(c) for c in node.children]

        return walk(self.root)


# -- strategies ------------------------------------------------------


def _ordered(subtrees: list[Nested]) -> list[Nested]:
    def min_leaf(sub: Nested) -> int:
        return sub if isinstance(sub, int) else min(min_leaf(c) for c in sub)

    return sorted(subtrees, key=min_leaf)


def _terminal_cluster(nodes: list[int]) -> Nested:
    # recursion stops at clusters of size <= 2
    if len(nodes) == 1:
        return nodes[0]
    return sorted(nodes)


def _nx_weighted(g: Multigraph, nodes: list[int]) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(sorted(nodes))
    keep = set(nodes)
    for u in sorted(nodes):
        for v, m in g.neighbors(u):
            if v in keep and u < v:
                G.add_edge(u, v, weight=m)
    return G


_FLAT_CLUSTER_CAP = 10  # matches the largest usable mu


def _louvain_tree(g: Multigraph, nodes: list[int], seed: int, path: tuple[int, ...]) -> Nested:
    if len(nodes) <= 2:
        return _terminal_cluster(nodes)
    G = _nx_weighted(g, nodes)
    comms = nx.community.louvain_communities(G, weight="weight", seed=substream_seed(seed, "louvain", *path))
    comms = sorted((sorted(c) for c in comms), key=lambda c: c[0])
    if len(comms) == 1:
        if len(nodes) <= _FLAT_CLUSTER_CAP:
            # an indivisible small community becomes one flat merge, so its
            # nodes stay together as a single rule candidate
            return [int(u) for u in sorted(nodes)]
        # too large to keep flat; randomly bipartition this level to guarantee progress
        rng = substream(seed, "louvain-fallback", *path)
        idx = list(range(len(nodes)))
        rng.shuffle(idx)
        half = (len(nodes) + 1) // 2
        ordered = sorted(nodes)
        comms = sorted(
            [sorted(ordered[i] for i in idx[:half]), sorted(ordered[i] for i in idx[half:])],
            key=lambda c: c[0],
        )
    children: list[Nested] = []
    for i, c in enumerate(comms):
        if len(c) <= 2:
            # dust communities join the parent merge directly instead of
            # spawning a two-leaf cluster of their own
            children.extend(int(u) for u in c)
        else:
            children.append(_louvain_tree(g, c, seed, path + (i,)))
    return _ordered(children)


def _random_tree(nodes: list[int], seed: int, path: tuple[int, ...]) -> Nested:
    if len(nodes) <= 2:
        return _terminal_cluster(nodes)
    rng = substream(seed, "random", *path)
    idx = list(range(len(nodes)))
    rng.shuffle(idx)
    half = (len(nodes) + 1) // 2
    ordered = sorted(nodes)
    sides = sorted(
        [sorted(ordered[i] for i in idx[:half]), sorted(ordered[i] for i in idx[half:])],
        key=lambda c: c[0],
    )
    children = [_random_tree(side, seed, path + (i,)) for i, side in enumerate(sides)]
    return _ordered(children)


def _fiedler_split(g: Multigraph, nodes: list[int], seed: int, path: tuple[int, ...]) -> tuple[list[int], list[int]] | None:
    """Sign split of the Fiedler vector, or None when iteration cannot resolve one."""
    n = len(nodes)
    index = {u: i for i, u in enumerate(nodes)}
    W = np.zeros((n, n))
    keep = set(nodes)
    for u in nodes:
        for v, m in g.neighbors(u):
            if v in keep:
                W[index[u], index[v]] = m
    deg = W.sum(axis=1)
    if deg.max() == 0:
        return None  # edgeless cluster has no meaningful Fiedler vector
    # B = cI - L is PSD with the constant vector as top eigenvector; deflating it
    # makes the Fiedler vector dominant
    c = 2.0 * deg.max()
    rng = substream(seed, "fiedler", *path)
    v = np.array([rng.gauss(0.0, 1.0) for _ in range(n)])
    v -= v.mean()
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        return None
    v /= norm
    for _ in range(_POWER_ITER_CAP):
        w = c * v - (deg * v - W @ v)
        w -= w.mean()
        norm = np.linalg.norm(w)
        if norm < 1e-12:
            return None
        w /= norm
        if min(np.linalg.norm(w - v), np.linalg.norm(w + v)) < _POWER_TOL:
            v = w
            break
        v = w
    else:
        return None
    pos = [u for u in nodes if v[index[u]] > 1e-12]
    neg = [u for u in nodes if v[index[u]] < -1e-12]
    decided = set(pos) | set(neg)
    zero = [u for u in nodes if u not in decided]
    small, large = (pos, neg) if len(pos) <= len(neg) else (neg, pos)
    small = small + zero  # ties go to the smaller side
    if not small or not large:
        return None
    return sorted(small), sorted(large)


def _fiedler_tree(g: Multigraph, nodes: list[int], seed: int, path: tuple[int, ...]) -> Nested:
    if len(nodes) <= 2:
        return _terminal_cluster(nodes)
    split = _fiedler_split(g, nodes, seed, path)
    if split is None:
        rng = substream(seed, "fiedler-fallback", *path)
        idx = list(range(len(nodes)))
        rng.shuffle(idx)
        half = (len(nodes) + 1) // 2
        ordered = sorted(nodes)
        split = (sorted(ordered[i] for i in idx[:half]), sorted(ordered[i] for i in idx[half:]))
    sides = sorted(split, key=lambda c: c[0])
    children = [_fiedler_tree(g, side, seed, path + (i,)) for i, side in enumerate(sides)]
    return _ordered(children)


def build_dendrogram(g: Multigraph, strategy: str = "louvain", seed: int = 0) -> Dendrogram:
    """Cluster g into a dendrogram; deterministic given (g, strategy, seed)."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown clustering strategy {strategy!r}; choose from {STRATEGIES}")
    if g.number_of_nodes() == 0:
        raise GraphError("cannot build a dendrogram for an empty graph")

    def tree_for(nodes: list[int]) -> Nested:
        if len(nodes) == 1:
            return nodes[0]
        if strategy == "louvain":
            return _louvain_tree(g, nodes, seed, ())
        if strategy == "random":
            return _random_tree(nodes, seed, ())
        return _fiedler_tree(g, nodes, seed, ())

    comps = g.connected_components()
    if len(comps) == 1:
        return Dendrogram.from_nested(tree_for(comps[0]))
    return Dendrogram.from_nested(_ordered([tree_for(c) for c in comps]))
