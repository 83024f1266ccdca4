"""Elias-gamma code lengths and description-length accounting.

Description lengths are real-valued bit counts (lg terms are not rounded).
The multiplicity matrix is charged once per unordered pair, diagonal
included, with every matrix entry shifted by +1 so gamma is defined at 0.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

from .multigraph import Multigraph

if TYPE_CHECKING:  # pragma: no cover
    from .extraction import Grammar, Rule


def gamma_len(n: int) -> int:
    """Elias-gamma codeword length 2*floor(lg n) + 1; defined for n >= 1."""
    if n < 1:
        raise ValueError(f"gamma code is defined for positive integers, got {n}")
    return 2 * (n.bit_length() - 1) + 1


def gamma_bits(n: int) -> str:
    """The explicit gamma codeword: floor(lg n) zeros, then n in binary."""
    if n < 1:
        raise ValueError(f"gamma code is defined for positive integers, got {n}")
    binary = bin(n)[2:]
    return "0" * (len(binary) - 1) + binary


def graph_dl(g: Multigraph) -> float:
    """Bits to encode a labeled multigraph: node term + multiplicity-matrix term.

    Zero entries each cost gamma_len(1) = 1 bit, so the pair sum is computed
    as n(n+1)/2 plus the per-edge surcharge instead of enumerating the matrix.
    """
    n = g.number_of_nodes()
    if n == 0:
        raise ValueError("graph_dl of an empty graph is undefined")
    lg_l = math.log2(g.alphabet_size())
    v_term = math.log2(n) + n * lg_l
    e = g.distinct_edge_count()
    pair_sum = n * (n + 1) // 2
    pair_sum += sum(gamma_len(m + 1) - 1 for _, _, m in g.edges())
    e_term = (math.log2(e) if e > 0 else 0.0) + lg_l * pair_sum
    return v_term + e_term


def rule_dl(rule: "Rule") -> float:
    """LHS bits gamma(omega+1) + gamma(f), plus RHS graph bits and boundary-degree bits."""
    lhs = gamma_len(rule.omega + 1) + gamma_len(rule.frequency)
    rhs = graph_dl(rule.rhs)
    rhs += sum(gamma_len(rule.b_deg.get(v, 0) + 1) for v in rule.rhs.nodes())
    return lhs + rhs


def grammar_dl(grammar: "Grammar") -> float:
    """Sum of rule_dl over distinct rules; duplicates live in the frequency term."""
    if not grammar.rules:
        raise ValueError("grammar_dl of an empty grammar is undefined")
    return sum(rule_dl(r) for r in grammar.rules.values())
