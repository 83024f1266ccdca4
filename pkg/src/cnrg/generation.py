"""Graph generation from a grammar.

Stochastic mode starts from a single size-0 nonterminal and keeps replacing
nonterminals with frequency-weighted rule right-hand sides, wiring each
broken edge to an RHS node chosen uniformly over remaining boundary
capacity. Replay mode applies a derivation record in reverse contraction
order, rebuilding the extraction input graph exactly.
"""

from __future__ import annotations

from .errors import GenerationError, GenerationStuckError, ReplayIntegrityError, SizeCapError
from .extraction import DerivationRecord, Grammar, Rule
from .multigraph import Multigraph
from .rng import substream

RETRY_CAP = 100


def _splice(g: Multigraph, target: int, rule: Rule, next_id: int, rng) -> int:
    """Replace `target` with rule.rhs, rewiring its incident edges; returns next free id."""
    incident = g.neighbors(target)
    broken = sum(m for _, m in incident)
    if broken != rule.omega:
        raise GenerationError(f"nonterminal {target} has weighted degree {broken}, rule expects {rule.omega}")
    fresh = {v: next_id + v for v in rule.rhs.nodes()}
    g.remove_node(target)
    for v in rule.rhs.nodes():
        g.add_node(fresh[v], rule.rhs.label(v))
    for u, v, m in rule.rhs.edges():
        g.add_edge(fresh[u], fresh[v], m)
    capacity = {v: rule.b_deg.get(v, 0) for v in rule.rhs.nodes()}
    for outside, m in incident:
        for _ in range(m):
            slots = [v for v in sorted(capacity) if capacity[v] > 0]
            weights = [capacity[v] for v in slots]
            pick = rng.choices(slots, weights=weights, k=1)[0]
            capacity[pick] -= 1
            g.add_edge(fresh[pick], outside, 1)
    if any(capacity.values()):
        raise GenerationError("boundary capacity left over after rewiring")
    return next_id + rule.rhs.number_of_nodes()


def _generate_once(grammar: Grammar, rng, max_size: int) -> Multigraph | None:
    """One attempt; None when the terminal count exceeds max_size."""
    g = Multigraph()
    g.add_node(0, 0)
    next_id = 1
    while True:
        nts = g.nonterminals()
        if not nts:
            return g
        target = rng.choice(nts)
        omega = g.label(target)
        assert omega is not None
        rules = grammar.rules_by_omega(omega)
        if not rules:
            raise GenerationStuckError(f"no rule with omega {omega} for nonterminal {target}")
        rule = rng.choices(rules, weights=[r.frequency for r in rules], k=1)[0]
        next_id = _splice(g, target, rule, next_id, rng)
        if g.terminal_count() > max_size:
            return None


def generate(grammar: Grammar, seed: int = 0, max_size: int | None = None) -> Multigraph:
    """Generate one terminal-only graph; retries with fresh substreams when max_size is exceeded."""
    if not grammar.rules:
        raise GenerationError("cannot generate from an empty grammar")
    if not grammar.rules_by_omega(0):
        raise GenerationStuckError("grammar has no size-0 rule to start from")
    if max_size is None:
        max_size = 10 * max(grammar.source_nodes, 1)
    if max_size < 1:
        raise ValueError(f"max_size must be >= 1, got {max_size}")
    for attempt in range(RETRY_CAP):
        rng = substream(seed, "generation", attempt)
        g = _generate_once(grammar, rng, max_size)
        if g is not None:
            return g
    raise SizeCapError(f"all {RETRY_CAP} attempts exceeded max_size={max_size}")


def replay(grammar: Grammar, record: DerivationRecord | None = None) -> Multigraph:
    """Invert the recorded contraction sequence; returns the extraction input graph exactly."""
    if record is None:
        record = grammar.derivation
    if record is None or not record.steps:
        raise ReplayIntegrityError("no derivation record to replay")
    g = Multigraph()
    g.add_node(record.final_node, 0)
    for step in reversed(record.steps):
        rule = grammar.rules.get(step.key)
        if rule is None:
            raise ReplayIntegrityError(f"derivation references unknown rule key {step.key!r}")
        if not g.has_node(step.target):
            raise ReplayIntegrityError(f"derivation target {step.target} not present in the graph")
        if g.label(step.target) != rule.omega:
            raise ReplayIntegrityError(f"target {step.target} has label {g.label(step.target)}, rule expects {rule.omega}")
        if len(step.node_map) != rule.rhs.number_of_nodes() or len(step.attachments) != len(step.node_map):
            raise ReplayIntegrityError("node_map/attachments do not match the rule rhs")
        expected: dict[int, int] = {}
        for i, lst in enumerate(step.attachments):
            got = sum(m for _, m in lst)
            want = rule.b_deg.get(i, 0)
            if got != want:
                raise ReplayIntegrityError(f"attachment weight {got} != b_deg {want} on rhs node {i}")
            for outside, m in lst:
                expected[outside] = expected.get(outside, 0) + m
        incident = dict(g.neighbors(step.target))
        if incident != expected:
            raise ReplayIntegrityError(f"edges incident to {step.target} do not match the recorded attachments")
        g.remove_node(step.target)
        for i, orig in enumerate(step.node_map):
            if g.has_node(orig):
                raise ReplayIntegrityError(f"node id {orig} expanded twice")
            g.add_node(orig, rule.rhs.label(i))
        for u, v, m in rule.rhs.edges():
            g.add_edge(step.node_map[u], step.node_map[v], m)
        for i, lst in enumerate(step.attachments):
            for outside, m in lst:
                g.add_edge(step.node_map[i], outside, m)
    if g.nonterminals():
        raise ReplayIntegrityError("replay finished with nonterminals left; record is truncated")
    if g.number_of_nodes() != grammar.source_nodes or g.distinct_edge_count() != grammar.source_edges:
        raise ReplayIntegrityError("replayed graph does not match the recorded source size")
    return g
