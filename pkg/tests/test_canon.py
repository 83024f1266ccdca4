from __future__ import annotations

import itertools
import random

import pytest

from cnrg.canon import SIZE_CAP, canonical_key, canonical_order
from cnrg.errors import UnsupportedSizeError
from cnrg.multigraph import Multigraph


def rand_rule_graph(rng: random.Random, n: int) -> tuple[Multigraph, dict[int, int]]:
    """Random connected labeled multigraph with boundary degrees, like a rule RHS."""
    g = Multigraph()
    for v in range(n):
        g.add_node(v, None if rng.random() < 0.7 else rng.randint(0, 3))
    for i in range(1, n):
        g.add_edge(i, rng.randrange(i), rng.randint(1, 3))
    if n >= 2:
        for _ in range(rng.randint(0, n)):
            u, v = rng.sample(range(n), 2)
            g.add_edge(u, v)
    return g, {v: rng.randint(0, 3) for v in range(n)}


def brute_iso(g1: Multigraph, b1: dict, g2: Multigraph, b2: dict) -> bool:
    """Label/boundary/multiplicity-preserving isomorphism by permutation search."""
    v1, v2 = sorted(g1.nodes()), sorted(g2.nodes())
    if len(v1) != len(v2):
        return False
    for perm in itertools.permutations(v2):
        m = dict(zip(v1, perm))
        if all(g1.label(v) == g2.label(m[v]) and b1[v] == b2[m[v]] for v in v1) and all(
            g1.edge_mult(u, v) == g2.edge_mult(m[u], m[v])
            for u, v in itertools.combinations(v1, 2)
        ):
            return True
    return False


class TestCanonicalKey:
    def test_invariant_under_relabeling(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 7)
            g, b = rand_rule_graph(rng, n)
            key1, _ = canonical_key(g, b)
            perm = list(range(n))
            rng.shuffle(perm)
            mapping = dict(enumerate(perm))
            g2 = g.relabeled(mapping)
            b2 = {mapping[v]: b[v] for v in b}
            key2, _ = canonical_key(g2, b2)
            assert key1 == key2

    def test_equal_key_iff_brute_isomorphic(self):
        rng = random.Random(9)
        for _ in range(200):
            n = rng.randint(2, 5)
            g1, b1 = rand_rule_graph(rng, n)
            g2, b2 = rand_rule_graph(rng, n)
            same_key = canonical_key(g1, b1)[0] == canonical_key(g2, b2)[0]
            assert same_key == brute_iso(g1, b1, g2, b2)

    def test_distinguishes_boundary_degrees(self):
        g = Multigraph()
        g.add_edge(0, 1)
        k1, _ = canonical_key(g, {0: 1, 1: 0})
        k2, _ = canonical_key(g, {0: 0, 1: 0})
        assert k1 != k2

    def test_distinguishes_nonterminal_sizes(self):
        g = Multigraph()
        g.add_edge(0, 1)
        g.set_label(0, 2)
        k1, _ = canonical_key(g, {0: 0, 1: 0})
        g2 = Multigraph()
        g2.add_edge(0, 1)
        g2.set_label(0, 3)
        k2, _ = canonical_key(g2, {0: 0, 1: 0})
        assert k1 != k2

    def test_order_is_a_permutation_of_nodes(self):
        rng = random.Random(21)
        g, b = rand_rule_graph(rng, 6)
        _, order = canonical_order_pair(g, b)
        assert sorted(order) == sorted(g.nodes())

    def test_size_cap_raises(self):
        g = Multigraph()
        for i in range(1, SIZE_CAP + 2):
            g.add_edge(0, i)
        b = {v: 0 for v in g.nodes()}
        with pytest.raises(UnsupportedSizeError):
            canonical_key(g, b)

    def test_clique_with_twins_completes_quickly(self):
        # all-twin graphs explode without transposition pruning
        g = Multigraph()
        for u, v in itertools.combinations(range(SIZE_CAP), 2):
            g.add_edge(u, v)
        b = {v: 1 for v in g.nodes()}
        key, order = canonical_key(g, b)
        assert sorted(order) == list(range(SIZE_CAP))


def canonical_order_pair(g: Multigraph, b: dict) -> tuple[str, list[int]]:
    key, order = canonical_key(g, b)
    assert canonical_order(g, b) == order
    return key, order
