"""Graph comparison metrics: spectral lambda-distance, 2-4-node graphlet census,
and per-batch comparison reports.

All metrics collapse multi-edges to simple adjacency first.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .errors import EvaluationError
from .multigraph import Multigraph

DENSE_SPECTRUM_CAP = 3000
TOP_K_EIGENVALUES = 200

CENSUS_KEYS = ("g2_1", "g3_1", "g3_2", "g4_1", "g4_2", "g4_3", "g4_4", "g4_5", "g4_6")

# induced 4-node types keyed by (edge count, sorted degree sequence)
_FOUR_TYPES = {
    (6, (3, 3, 3, 3)): "g4_1",  # clique
    (5, (2, 2, 3, 3)): "g4_2",  # chordal cycle
    (4, (1, 2, 2, 3)): "g4_3",  # tailed triangle
    (4, (2, 2, 2, 2)): "g4_4",  # cycle
    (3, (1, 1, 1, 3)): "g4_5",  # star
    (3, (1, 1, 2, 2)): "g4_6",  # path
}


def _simple_sets(g: Multigraph) -> dict[int, set[int]]:
    return {u: {v for v, _ in g.neighbors(u)} for u in g.nodes()}


def spectrum(g: Multigraph) -> np.ndarray:
    """Adjacency eigenvalues sorted by descending magnitude, ties by descending value."""
    nodes = g.nodes()
    n = len(nodes)
    if n == 0:
        raise EvaluationError("spectrum of an empty graph is undefined")
    index = {u: i for i, u in enumerate(nodes)}
    if n <= DENSE_SPECTRUM_CAP:
        A = np.zeros((n, n))
        for u, v, _ in g.edges():
            A[index[u], index[v]] = 1.0
            A[index[v], index[u]] = 1.0
        vals = np.linalg.eigvalsh(A)
    else:
        from scipy.sparse import coo_matrix
        from scipy.sparse.linalg import ArpackNoConvergence, eigsh

        rows, cols = [], []
        for u, v, _ in g.edges():
            rows.extend((index[u], index[v]))
            cols.extend((index[v], index[u]))
        A = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)).tocsr()
        k = min(TOP_K_EIGENVALUES, n - 1)
        try:
            vals = eigsh(A, k=k, which="LM", return_eigenvectors=False)
        except ArpackNoConvergence as exc:
            raise EvaluationError(f"eigensolver failed to converge: {exc}") from exc
    order = np.lexsort((-vals, -np.abs(vals)))
    return vals[order]


def lambda_distance(h1: Multigraph, h2: Multigraph) -> float:
    """Euclidean distance between magnitude-sorted spectra, shorter one zero-padded."""
    s1, s2 = spectrum(h1), spectrum(h2)
    n = max(len(s1), len(s2))
    p1 = np.zeros(n)
    p1[: len(s1)] = s1
    p2 = np.zeros(n)
    p2[: len(s2)] = s2
    return float(np.sqrt(np.sum((p1 - p2) ** 2)))


def graphlet_census(g: Multigraph) -> dict[str, int]:
    """Exact induced counts of connected 2-4 node subgraph types."""
    adj = _simple_sets(g)
    counts = dict.fromkeys(CENSUS_KEYS, 0)
    counts["g2_1"] = sum(len(s) for s in adj.values()) // 2
    triangles = 0
    for u in adj:
        for v in adj[u]:
            if v > u:
                triangles += sum(1 for w in adj[u] & adj[v] if w > v)
    counts["g3_1"] = triangles
    wedge_total = sum(len(s) * (len(s) - 1) // 2 for s in adj.values())
    counts["g3_2"] = wedge_total - 3 * triangles
    for quad in _connected_quads(adj):
        m = 0
        degs = []
        for a in quad:
            d = len(adj[a] & quad)
            degs.append(d)
            m += d
        m //= 2
        counts[_FOUR_TYPES[(m, tuple(sorted(degs)))]] += 1
    return counts


def _connected_quads(adj: dict[int, set[int]]):
    """Enumerate each connected induced 4-node subset exactly once (ESU)."""

    def extend(sub: list[int], extension: set[int], root: int):
        if len(sub) == 4:
            yield frozenset(sub)
            return
        ext = set(extension)
        while ext:
            w = ext.pop()
            neigh_sub = set().union(*(adj[s] for s in sub)) | set(sub)
            new_ext = ext | {u for u in adj[w] if u > root and u not in neigh_sub and u != w}
            yield from extend(sub + [w], new_ext, root)

    for v in sorted(adj):
        yield from extend([v], {u for u in adj[v] if u > v}, v)


def census_disagreement(original: dict[str, int], generated: dict[str, int]) -> dict[str, float]:
    """Per-graphlet |log10((c_gen + 1) / (c_orig + 1))|."""
    return {k: abs(math.log10((generated[k] + 1) / (original[k] + 1))) for k in CENSUS_KEYS}


def compare_report(
    original: Multigraph,
    generated: list[tuple[str, Multigraph]],
    dl_ratio: float | None = None,
) -> dict:
    """Per-graph rows (name, sizes, lambda-distance, graphlet disagreements) plus a mean row."""
    if not generated:
        raise EvaluationError("no generated graphs to compare")
    base = graphlet_census(original)
    rows = []
    for name, g in generated:
        dis = census_disagreement(base, graphlet_census(g))
        row = {
            "name": name,
            "nodes": g.number_of_nodes(),
            "edges": g.distinct_edge_count(),
            "lambda_distance": lambda_distance(original, g),
        }
        row.update({k: dis[k] for k in CENSUS_KEYS})
        rows.append(row)
    numeric = ["nodes", "edges", "lambda_distance", *CENSUS_KEYS]
    mean_row: dict = {"name": "mean"}
    for col in numeric:
        mean_row[col] = sum(r[col] for r in rows) / len(rows)
    return {"rows": rows, "mean": mean_row, "dl_ratio": dl_ratio}
