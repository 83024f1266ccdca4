"""Exact canonical keys for small labeled multigraphs with boundary degrees.

Two (graph, b_deg) pairs get equal keys iff some node bijection preserves
labels, boundary degrees, and edge multiplicities. The search places nodes
one at a time; each position must take a lexicographically minimal row
(ties branch), so the minimal complete encoding is always found.
Interchangeable twin nodes are pruned to keep symmetric graphs (cliques,
stars) from exploding the search.
"""

from __future__ import annotations

from .errors import UnsupportedSizeError
from .multigraph import Multigraph

SIZE_CAP = 10
_STEP_BUDGET = 500_000


def _label_code(g: Multigraph, v: int) -> int:
    lab = g.label(v)
    return -1 if lab is None else lab  # terminals sort before nonterminals


def canonical_order(g: Multigraph, b_deg: dict[int, int]) -> list[int]:
    """Node ordering minimizing the placement-row encoding; exact for <= SIZE_CAP nodes."""
    nodes = g.nodes()
    n = len(nodes)
    if n > SIZE_CAP:
        raise UnsupportedSizeError(f"{n} nodes exceeds canonical-form cap {SIZE_CAP}")
    if n == 0:
        return []

    def row(v: int, placed: list[int]) -> tuple:
        # higher multiplicity to earlier nodes sorts first, keeping growth connected
        return (_label_code(g, v), b_deg.get(v, 0), tuple(-g.edge_mult(v, p) for p in placed))

    best_rows: list[tuple] | None = None
    best_order: list[int] | None = None
    steps = 0

    def rec(placed: list[int], rows: list[tuple], remaining: list[int]) -> None:
        nonlocal best_rows, best_order, steps
        steps += 1
        if steps > _STEP_BUDGET:
            raise UnsupportedSizeError("canonical-form search budget exceeded")
        if not remaining:
            if best_rows is None or rows < best_rows:
                best_rows = list(rows)
                best_order = list(placed)
            return
        minrow = min(row(v, placed) for v in remaining)
        rows.append(minrow)
        if best_rows is None or rows <= best_rows[: len(rows)]:
            tied = [v for v in remaining if row(v, placed) == minrow]
            # twins (equal connections to every third node) are interchangeable
            groups: list[list[int]] = []
            for v in tied:
                for grp in groups:
                    u = grp[0]
                    if all(g.edge_mult(v, w) == g.edge_mult(u, w) for w in remaining if w not in (u, v)):
                        grp.append(v)
                        break
                else:
                    groups.append([v])
            for grp in groups:
                v = min(grp)
                rec(placed + [v], rows, [w for w in remaining if w != v])
        rows.pop()

    rec([], [], nodes)
    assert best_order is not None
    return best_order


def canonical_key(g: Multigraph, b_deg: dict[int, int]) -> tuple[str, list[int]]:
    """(key string, node order). Equal keys iff label/boundary/multiplicity-preserving isomorphism."""
    order = canonical_order(g, b_deg)
    n = len(order)
    labs = ",".join("t" if g.label(v) is None else f"n{g.label(v)}" for v in order)
    bs = ",".join(str(b_deg.get(v, 0)) for v in order)
    ms = ",".join(str(g.edge_mult(order[i], order[j])) for i in range(n) for j in range(i + 1, n))
    return f"{n}|{labs}|{bs}|{ms}", order
