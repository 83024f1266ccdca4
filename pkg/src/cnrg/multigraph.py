"""Labeled undirected multigraph with boundary computation and subset contraction.

Nodes are integer ids. A node label is either None (terminal) or an integer
omega >= 0 (nonterminal of size omega). Edges carry a positive multiplicity;
self-loops are not representable.
"""

from __future__ import annotations

import warnings
from collections.abc import Iterable, Iterator

from .errors import ContractMismatchError, GraphError, InputFormatError

NodeLabel = int | None  # None = terminal, int = nonterminal size


class Multigraph:
    def __init__(self) -> None:
        self._adj: dict[int, dict[int, int]] = {}
        self._labels: dict[int, NodeLabel] = {}

    # -- construction ------------------------------------------------

    def add_node(self, u: int, label: NodeLabel = None) -> None:
        if u in self._labels:
            if self._labels[u] != label:
                raise GraphError(f"node {u} already present with a different label")
            return
        self._labels[u] = label
        self._adj[u] = {}

    def set_label(self, u: int, label: NodeLabel) -> None:
        if u not in self._labels:
            raise GraphError(f"no such node: {u}")
        self._labels[u] = label

    def add_edge(self, u: int, v: int, mult: int = 1) -> None:
        """Accumulate multiplicity on the (u, v) pair; endpoints are auto-added as terminals."""
        if u == v:
            raise GraphError(f"self-loop on node {u} not allowed")
        if mult < 1:
            raise GraphError(f"edge multiplicity must be >= 1, got {mult}")
        if u not in self._labels:
            self.add_node(u)
        if v not in self._labels:
            self.add_node(v)
        self._adj[u][v] = self._adj[u].get(v, 0) + mult
        self._adj[v][u] = self._adj[v].get(u, 0) + mult

    def remove_node(self, u: int) -> None:
        if u not in self._labels:
            raise GraphError(f"no such node: {u}")
        for v in list(self._adj[u]):
            del self._adj[v][u]
        del self._adj[u]
        del self._labels[u]

    # -- queries -----------------------------------------------------

    def has_node(self, u: int) -> bool:
        return u in self._labels

    def label(self, u: int) -> NodeLabel:
        return self._labels[u]

    def nodes(self) -> list[int]:
        return sorted(self._labels)

    def edges(self) -> list[tuple[int, int, int]]:
        """(u, v, mult) once per unordered pair, u < v, in sorted order."""
        return [
            (u, v, self._adj[u][v])
            for u in sorted(self._adj)
            for v in sorted(self._adj[u])
            if u < v
        ]

    def edge_mult(self, u: int, v: int) -> int:
        return self._adj.get(u, {}).get(v, 0)

    def neighbors(self, u: int) -> list[tuple[int, int]]:
        """Sorted (neighbor, multiplicity) pairs."""
        return sorted(self._adj[u].items())

    def degree(self, u: int) -> int:
        """Weighted degree: sum of incident multiplicities."""
        return sum(self._adj[u].values())

    def number_of_nodes(self) -> int:
        return len(self._labels)

    def distinct_edge_count(self) -> int:
        """Number of adjacent unordered pairs, ignoring multiplicity."""
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def total_edge_mult(self) -> int:
        return sum(sum(nbrs.values()) for nbrs in self._adj.values()) // 2

    def nonterminals(self) -> list[int]:
        return sorted(u for u, lab in self._labels.items() if lab is not None)

    def terminal_count(self) -> int:
        return sum(1 for lab in self._labels.values() if lab is None)

    def alphabet_size(self) -> int:
        """|L|: terminal-node and internal-edge symbols plus one per distinct nonterminal size."""
        sizes = {lab for lab in self._labels.values() if lab is not None}
        return 2 + len(sizes)

    # -- structure ---------------------------------------------------

    def copy(self) -> "Multigraph":
        g = Multigraph()
        g._labels = dict(self._labels)
        g._adj = {u: dict(nbrs) for u, nbrs in self._adj.items()}
        return g

    def relabeled(self, mapping: dict[int, int]) -> "Multigraph":
        g = Multigraph()
        for u in self._labels:
            g.add_node(mapping[u], self._labels[u])
        for u, v, m in self.edges():
            g.add_edge(mapping[u], mapping[v], m)
        return g

    def induced_subgraph(self, subset: Iterable[int]) -> "Multigraph":
        """Subgraph on `subset` with all internal edges and their multiplicities."""
        keep = set(subset)
        missing = keep - self._labels.keys()
        if missing:
            raise GraphError(f"nodes not in graph: {sorted(missing)}")
        g = Multigraph()
        for u in keep:
            g.add_node(u, self._labels[u])
        for u in keep:
            for v, m in self._adj[u].items():
                if v in keep and u < v:
                    g.add_edge(u, v, m)
        return g

    def boundary(self, subset: Iterable[int]) -> tuple[int, dict[int, int], list[tuple[int, int, int]]]:
        """Boundary of `subset`: (omega, per-node boundary degrees, boundary edges).

        A boundary edge has exactly one endpoint inside; omega counts them
        with multiplicity. Returned edges are (inside, outside, mult).
        """
        keep = set(subset)
        missing = keep - self._labels.keys()
        if missing:
            raise GraphError(f"nodes not in graph: {sorted(missing)}")
        b_deg = {u: 0 for u in keep}
        edges: list[tuple[int, int, int]] = []
        for u in sorted(keep):
            for v, m in sorted(self._adj[u].items()):
                if v not in keep:
                    b_deg[u] += m
                    edges.append((u, v, m))
        omega = sum(b_deg.values())
        return omega, b_deg, edges

    def contract(self, subset: Iterable[int], new_id: int, label_size: int) -> tuple[int, dict[int, int], list[tuple[int, int, int]]]:
        """Replace `subset` by a fresh nonterminal node, redirecting boundary edges to it.

        label_size must equal the computed boundary size omega. Internal
        edges vanish with the subset; redirected edges aggregate into
        multi-edges. Returns the boundary triple that was removed.
        """
        keep = set(subset)
        if new_id in self._labels:
            raise GraphError(f"new node id {new_id} already in graph")
        omega, b_deg, edges = self.boundary(keep)
        if label_size != omega:
            raise ContractMismatchError(f"declared size {label_size} != boundary size {omega}")
        for u in keep:
            self.remove_node(u)
        self.add_node(new_id, omega)
        for _, outside, m in edges:
            # outside is never in `keep`, so no self-loop can form here
            self.add_edge(new_id, outside, m)
        return omega, b_deg, edges

    def connected_components(self) -> list[list[int]]:
        """Components as sorted node lists, ordered by smallest member."""
        seen: set[int] = set()
        comps: list[list[int]] = []
        for start in sorted(self._labels):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                u = stack.pop()
                for v in self._adj[u]:
                    if v not in seen:
                        seen.add(v)
                        comp.append(v)
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._labels == other._labels and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Multigraph(n={self.number_of_nodes()}, pairs={self.distinct_edge_count()})"


# -- edge-list io ----------------------------------------------------


def parse_edgelist(lines: str | Iterable[str]) -> Multigraph:
    """Parse `u v` lines into a multigraph.

    Lines starting with '#' are comments; duplicate lines accumulate
    multiplicity; self-loop lines are dropped with a warning.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    g = Multigraph()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputFormatError(f"line {lineno}: non-integer node id in {line!r}") from None
        if u < 0 or v < 0:
            raise InputFormatError(f"line {lineno}: node ids must be non-negative")
        if u == v:
            warnings.warn(f"line {lineno}: self-loop on node {u} ignored", stacklevel=2)
            continue
        g.add_edge(u, v)
    return g


def read_edgelist(path: str) -> Multigraph:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_edgelist(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc


def write_edgelist(g: Multigraph, path: str, collapse: bool = False) -> None:
    """Write one `u v` line per edge unit (or per pair when collapsing multi-edges)."""
    isolated = [u for u in g.nodes() if g.degree(u) == 0]
    if isolated:
        warnings.warn(f"{len(isolated)} isolated node(s) not representable in edge-list output", stacklevel=2)
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, m in g.edges():
            for _ in range(1 if collapse else m):
                fh.write(f"{u} {v}\n")
