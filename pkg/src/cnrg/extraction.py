"""Grammar extraction: score dendrogram subtrees, contract winners, merge rules.

The loop runs until the dendrogram root itself has been contracted. Each
contraction emits a rule (merged by canonical key, frequencies summed)
and one derivation step, so the whole contraction sequence can be
replayed in reverse to rebuild the input graph exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .canon import canonical_key
from .clustering import STRATEGIES, Dendrogram, build_dendrogram
from .errors import ExtractionError, GrammarError, UnsupportedSizeError
from .mdl import graph_dl, rule_dl
from .multigraph import Multigraph
from .rng import substream

POLICIES = ("random", "greedy-dl", "greedy-level", "greedy-level-dl", "local-mdl", "global-mdl")

FORMAT_MARKER = "cnrg-grammar-v1"


@dataclass
class Rule:
    """Production <omega> -> (rhs, frequency); rhs nodes are 0..k-1 in canonical order."""

    omega: int
    rhs: Multigraph
    b_deg: dict[int, int]
    frequency: int = 1
    key: str = ""
    flagged: bool = False  # start rule or forced oversized candidate

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rule):
            return NotImplemented
        return (
            self.omega == other.omega
            and self.frequency == other.frequency
            and self.key == other.key
            and self.flagged == other.flagged
            and self.b_deg == other.b_deg
            and self.rhs == other.rhs
        )


@dataclass
class DerivationStep:
    target: int  # nonterminal node id the contraction created
    key: str
    node_map: list[int]  # rhs canonical index -> graph node id
    attachments: list[list[tuple[int, int]]]  # rhs index -> [(external node, mult)]


@dataclass
class DerivationRecord:
    final_node: int
    steps: list[DerivationStep] = field(default_factory=list)


@dataclass
class Grammar:
    rules: dict[str, Rule]
    start_key: str
    params: dict
    source_nodes: int
    source_edges: int
    derivation: DerivationRecord | None = None

    def rules_by_omega(self, omega: int) -> list[Rule]:
        return [self.rules[k] for k in sorted(self.rules) if self.rules[k].omega == omega]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return (
            self.rules == other.rules
            and self.start_key == other.start_key
            and self.params == other.params
            and self.source_nodes == other.source_nodes
            and self.source_edges == other.source_edges
            and self.derivation == other.derivation
        )


# -- candidate bookkeeping -------------------------------------------


@dataclass
class _Candidate:
    idx: int  # dendrogram arena index
    omega: int
    b_deg: dict[int, int]
    rhs: Multigraph
    key: str | None  # None when the rhs exceeds the canonical-form cap
    rdl: float  # rule_dl at frequency 1
    score: float | None = None


def _make_candidate(wg: Multigraph, d: Dendrogram, idx: int) -> _Candidate:
    leaves = d.leaves_under(idx)
    omega, b_deg, _ = wg.boundary(leaves)
    rhs = wg.induced_subgraph(leaves)
    try:
        key, _ = canonical_key(rhs, b_deg)
    except UnsupportedSizeError:
        key = None
    probe = Rule(omega=omega, rhs=rhs, b_deg=b_deg, frequency=1)
    return _Candidate(idx=idx, omega=omega, b_deg=b_deg, rhs=rhs, key=key, rdl=rule_dl(probe))


def _contracted_dl(wg: Multigraph, leaf_sets: list[list[int]]) -> float:
    tmp = wg.copy()
    fresh = max(tmp.nodes()) + 1
    for leaves in leaf_sets:
        omega, _, _ = tmp.boundary(leaves)
        tmp.contract(leaves, fresh, omega)
        fresh += 1
    return graph_dl(tmp)


class _Extractor:
    def __init__(self, g: Multigraph, d: Dendrogram, policy: str, mu: int, seed: int) -> None:
        self.wg = g.copy()
        self.d = d
        self.policy = policy
        self.mu = mu
        self.seed = seed
        self.rules: dict[str, Rule] = {}
        self.steps: list[DerivationStep] = []
        self.next_id = max(g.nodes()) + 1
        self.next_unique = 0
        self.cache: dict[int, _Candidate] = {}

    # -- scoring ---------------------------------------------------

    def _candidate_info(self, idx: int) -> _Candidate:
        info = self.cache.get(idx)
        if info is None:
            info = _make_candidate(self.wg, self.d, idx)
            self.cache[idx] = info
        return info

    def _group_members(self, info: _Candidate, pool: list[int]) -> list[_Candidate]:
        if info.key is None:
            return [info]
        members = []
        for idx in pool:
            other = self._candidate_info(idx)
            if other.key == info.key:
                members.append(other)
        return members

    def _ensure_score(self, idx: int, pool: list[int]) -> _Candidate:
        """Fill in a missing score. Cached scores are deliberately kept stale after
        unrelated contractions; only ancestors of a contraction get re-scored."""
        info = self._candidate_info(idx)
        if info.score is not None:
            return info
        if self.policy in ("random", "greedy-dl", "greedy-level", "greedy-level-dl"):
            info.score = float(self.d.arena[idx].leaf_count - self.mu)
        elif self.policy == "local-mdl":
            info.score = info.rdl + _contracted_dl(self.wg, [self.d.leaves_under(idx)])
        else:  # global-mdl
            members = self._group_members(info, pool)
            leaf_sets = [self.d.leaves_under(m.idx) for m in members]
            claimed: set[int] = set()
            for ls in leaf_sets:
                overlap = claimed & set(ls)
                if overlap:
                    raise ExtractionError(f"same-key candidates overlap on nodes {sorted(overlap)}")
                claimed.update(ls)
            value = info.rdl + _contracted_dl(self.wg, leaf_sets)
            for m in members:
                if m.score is None:
                    m.score = value
        assert info.score is not None
        return info

    def _sort_key(self, info: _Candidate, draws: dict[int, float]):
        node = self.d.arena[info.idx]
        if self.policy == "random":
            return (info.score, draws[info.idx], node.level, node.min_leaf)
        if self.policy == "greedy-dl":
            return (info.score, info.rdl, node.level, node.min_leaf)
        if self.policy == "greedy-level":
            return (info.score, node.level, node.min_leaf)
        if self.policy == "greedy-level-dl":
            return (info.score, node.level, info.rdl, node.min_leaf)
        return (info.score, node.level, node.min_leaf)

    # -- contraction -----------------------------------------------

    def _emit_and_contract(self, idx: int, forced: bool) -> None:
        is_start = idx == self.d.root
        leaves = self.d.leaves_under(idx)
        omega, b_deg, bedges = self.wg.boundary(leaves)
        rhs_raw = self.wg.induced_subgraph(leaves)
        try:
            key, order = canonical_key(rhs_raw, b_deg)
            oversized = False
        except UnsupportedSizeError:
            key = f"unique:{self.next_unique}"
            self.next_unique += 1
            order = sorted(leaves, key=lambda v: (-1 if rhs_raw.label(v) is None else rhs_raw.label(v), b_deg[v], v))
            oversized = True
        mapping = {orig: i for i, orig in enumerate(order)}
        rule = Rule(
            omega=omega,
            rhs=rhs_raw.relabeled(mapping),
            b_deg={mapping[v]: b_deg[v] for v in order},
            frequency=1,
            key=key,
            flagged=forced or oversized or is_start,
        )
        existing = self.rules.get(key)
        if existing is None:
            self.rules[key] = rule
        else:
            existing.frequency += 1
            existing.flagged = existing.flagged or rule.flagged
        attachments: list[list[tuple[int, int]]] = [[] for _ in order]
        for inside, outside, m in bedges:
            attachments[mapping[inside]].append((outside, m))
        for lst in attachments:
            lst.sort()
        new_id = self.next_id
        self.next_id += 1
        self.wg.contract(leaves, new_id, omega)
        self.steps.append(DerivationStep(target=new_id, key=key, node_map=order, attachments=attachments))
        for anc in self.d.ancestors(idx):
            self.cache.pop(anc, None)
        self.cache.pop(idx, None)
        self.d.replace_subtree(idx, new_id)

    # -- main loop --------------------------------------------------

    def run(self) -> tuple[dict[str, Rule], list[DerivationStep], int]:
        iteration = 0
        limit = self.wg.number_of_nodes() + 1
        while not self.d.is_empty():
            iteration += 1
            if iteration > limit:
                raise ExtractionError("extraction exceeded its iteration bound; progress guarantee violated")
            internal = self.d.internal_nodes()
            pool = [i for i in internal if self.d.arena[i].leaf_count <= self.mu]
            forced = False
            if not pool:
                # nothing fits under mu; admit the smallest subtree to keep making progress
                best = min(internal, key=lambda i: (self.d.arena[i].leaf_count, self.d.arena[i].min_leaf))
                pool = [best]
                forced = True
            infos = [self._ensure_score(idx, pool) for idx in sorted(pool)]
            draws: dict[int, float] = {}
            if self.policy == "random":
                rng = substream(self.seed, "tiebreak", iteration)
                for idx in sorted(pool):
                    draws[idx] = rng.random()
            winner = min(infos, key=lambda info: self._sort_key(info, draws))
            if self.policy == "global-mdl" and winner.key is not None:
                selected = [i for i in infos if i.key == winner.key]
            else:
                selected = [winner]
            selected = self._disjoint(selected)
            for info in sorted(selected, key=lambda i: self.d.arena[i.idx].min_leaf):
                self._emit_and_contract(info.idx, forced)
        return self.rules, self.steps, self.steps[-1].target

    def _disjoint(self, selected: list[_Candidate]) -> list[_Candidate]:
        """Drop nested selections, keeping the subtree nearer the root."""
        kept: list[_Candidate] = []
        for info in sorted(selected, key=lambda i: (self.d.arena[i.idx].level, self.d.arena[i.idx].min_leaf)):
            if any(self.d.is_ancestor(k.idx, info.idx) or k.idx == info.idx for k in kept):
                continue
            kept.append(info)
        return kept

    def emit_single_node(self) -> None:
        """Start rule for a one-node graph; no scoring loop is needed."""
        node = self.d.arena[self.d.root].leaf_node
        assert node is not None
        leaves = [node]
        omega, b_deg, _ = self.wg.boundary(leaves)
        rhs_raw = self.wg.induced_subgraph(leaves)
        key, order = canonical_key(rhs_raw, b_deg)
        mapping = {orig: i for i, orig in enumerate(order)}
        self.rules[key] = Rule(
            omega=omega,
            rhs=rhs_raw.relabeled(mapping),
            b_deg={mapping[v]: b_deg[v] for v in order},
            frequency=1,
            key=key,
            flagged=True,
        )
        new_id = self.next_id
        self.wg.contract(leaves, new_id, omega)
        self.steps.append(DerivationStep(target=new_id, key=key, node_map=order, attachments=[[] for _ in order]))


def extract(
    g: Multigraph,
    strategy: str = "louvain",
    policy: str = "greedy-level-dl",
    mu: int = 4,
    seed: int = 0,
    dendrogram: Dendrogram | None = None,
) -> Grammar:
    """Extract a grammar from g; deterministic given (g, strategy, policy, mu, seed)."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown clustering strategy {strategy!r}; choose from {STRATEGIES}")
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; choose from {POLICIES}")
    if mu < 2:
        raise ValueError(f"mu must be >= 2, got {mu}")
    if g.number_of_nodes() == 0:
        raise ValueError("cannot extract a grammar from an empty graph")
    params = {"strategy": strategy, "policy": policy, "mu": mu, "seed": seed}
    source_nodes = g.number_of_nodes()
    source_edges = g.distinct_edge_count()
    if dendrogram is None:
        dendrogram = build_dendrogram(g, strategy, seed)
    else:
        # extraction consumes the tree; work on a copy so the caller's
        # dendrogram stays intact
        dendrogram = Dendrogram.from_nested(dendrogram.nested())
    ex = _Extractor(g, dendrogram, policy, mu, seed)
    if dendrogram.is_empty():
        # single-node graph: the start rule is the graph itself
        ex.emit_single_node()
        rules, steps, final_node = ex.rules, ex.steps, ex.steps[-1].target
    else:
        rules, steps, final_node = ex.run()
    start_key = steps[-1].key
    rules[start_key].flagged = True
    return Grammar(
        rules=rules,
        start_key=start_key,
        params=params,
        source_nodes=source_nodes,
        source_edges=source_edges,
        derivation=DerivationRecord(final_node=final_node, steps=steps),
    )


# -- serialization ---------------------------------------------------


def _rule_to_obj(rule: Rule) -> dict:
    nodes = []
    for v in rule.rhs.nodes():
        lab = rule.rhs.label(v)
        obj: dict = {"id": v, "kind": "terminal" if lab is None else "nonterminal", "b_deg": rule.b_deg.get(v, 0)}
        if lab is not None:
            obj["nt_size"] = lab
        nodes.append(obj)
    edges = [{"u": u, "v": v, "mult": m} for u, v, m in rule.rhs.edges()]
    return {
        "key": rule.key,
        "omega": rule.omega,
        "frequency": rule.frequency,
        "flagged": rule.flagged,
        "nodes": nodes,
        "edges": edges,
    }


def grammar_to_obj(grammar: Grammar) -> dict:
    rules = [_rule_to_obj(grammar.rules[k]) for k in sorted(grammar.rules, key=lambda k: (grammar.rules[k].omega, k))]
    obj = {
        "format": FORMAT_MARKER,
        "params": grammar.params,
        "source": {"nodes": grammar.source_nodes, "edges": grammar.source_edges},
        "start_key": grammar.start_key,
        "rules": rules,
    }
    if grammar.derivation is None:
        obj["derivation"] = None
    else:
        obj["derivation"] = {
            "final_node": grammar.derivation.final_node,
            "steps": [
                {
                    "target": s.target,
                    "key": s.key,
                    "node_map": list(s.node_map),
                    "attachments": [[[o, m] for o, m in lst] for lst in s.attachments],
                }
                for s in grammar.derivation.steps
            ],
        }
    return obj


def grammar_to_json(grammar: Grammar) -> str:
    return json.dumps(grammar_to_obj(grammar), sort_keys=True, indent=2) + "\n"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise GrammarError(msg)


def _rule_from_obj(obj: dict) -> Rule:
    _require(isinstance(obj, dict), "rule entry must be an object")
    for field_name in ("key", "omega", "frequency", "flagged", "nodes", "edges"):
        _require(field_name in obj, f"rule missing field {field_name!r}")
    omega, freq = obj["omega"], obj["frequency"]
    _require(isinstance(omega, int) and omega >= 0, "rule omega must be a non-negative integer")
    _require(isinstance(freq, int) and freq >= 1, "rule frequency must be a positive integer")
    rhs = Multigraph()
    b_deg: dict[int, int] = {}
    _require(isinstance(obj["nodes"], list) and obj["nodes"], "rule must have at least one rhs node")
    for nd in obj["nodes"]:
        _require(isinstance(nd, dict) and "id" in nd and "kind" in nd and "b_deg" in nd, "malformed rhs node")
        _require(isinstance(nd["id"], int), "rhs node id must be an integer")
        _require(isinstance(nd["b_deg"], int) and nd["b_deg"] >= 0, "b_deg must be a non-negative integer")
        if nd["kind"] == "terminal":
            _require("nt_size" not in nd, "terminal node cannot carry nt_size")
            label = None
        elif nd["kind"] == "nonterminal":
            _require(isinstance(nd.get("nt_size"), int) and nd["nt_size"] >= 0, "nonterminal needs nt_size >= 0")
            label = nd["nt_size"]
        else:
            raise GrammarError(f"unknown node kind {nd['kind']!r}")
        _require(not rhs.has_node(nd["id"]), f"duplicate rhs node id {nd['id']}")
        rhs.add_node(nd["id"], label)
        b_deg[nd["id"]] = nd["b_deg"]
    ids = rhs.nodes()
    _require(ids == list(range(len(ids))), "rhs node ids must be 0..k-1")
    for ed in obj["edges"]:
        _require(isinstance(ed, dict) and {"u", "v", "mult"} <= ed.keys(), "malformed rhs edge")
        _require(rhs.has_node(ed["u"]) and rhs.has_node(ed["v"]), "rhs edge references unknown node")
        _require(isinstance(ed["mult"], int) and ed["mult"] >= 1, "edge mult must be a positive integer")
        _require(ed["u"] != ed["v"], "self-loops are not allowed in rule rhs")
        _require(rhs.edge_mult(ed["u"], ed["v"]) == 0, "duplicate rhs edge entry")
        rhs.add_edge(ed["u"], ed["v"], ed["mult"])
    _require(sum(b_deg.values()) == omega, "sum of b_deg must equal omega")
    return Rule(omega=omega, rhs=rhs, b_deg=b_deg, frequency=freq, key=obj["key"], flagged=bool(obj["flagged"]))


def grammar_from_obj(obj: dict) -> Grammar:
    _require(isinstance(obj, dict), "grammar document must be an object")
    _require(obj.get("format") == FORMAT_MARKER, f"unknown grammar format, expected {FORMAT_MARKER!r}")
    for field_name in ("params", "source", "start_key", "rules"):
        _require(field_name in obj, f"grammar missing field {field_name!r}")
    params = obj["params"]
    _require(isinstance(params, dict) and {"strategy", "policy", "mu", "seed"} <= params.keys(), "malformed params")
    source = obj["source"]
    _require(isinstance(source, dict) and {"nodes", "edges"} <= source.keys(), "malformed source stats")
    rules: dict[str, Rule] = {}
    _require(isinstance(obj["rules"], list) and obj["rules"], "grammar must contain at least one rule")
    for robj in obj["rules"]:
        rule = _rule_from_obj(robj)
        _require(rule.key not in rules, f"duplicate rule key {rule.key!r}")
        rules[rule.key] = rule
    _require(obj["start_key"] in rules, "start_key does not reference a rule")
    _require(rules[obj["start_key"]].omega == 0, "start rule must have omega 0")
    derivation = None
    if obj.get("derivation") is not None:
        dobj = obj["derivation"]
        _require(isinstance(dobj, dict) and "final_node" in dobj and "steps" in dobj, "malformed derivation")
        steps = []
        for sobj in dobj["steps"]:
            _require(isinstance(sobj, dict) and {"target", "key", "node_map", "attachments"} <= sobj.keys(), "malformed derivation step")
            _require(sobj["key"] in rules, f"derivation step references unknown rule key {sobj['key']!r}")
            rule = rules[sobj["key"]]
            node_map = list(sobj["node_map"])
            _require(len(node_map) == rule.rhs.number_of_nodes(), "node_map length must match rhs size")
            atts = sobj["attachments"]
            _require(isinstance(atts, list) and len(atts) == len(node_map), "attachments length must match rhs size")
            steps.append(
                DerivationStep(
                    target=sobj["target"],
                    key=sobj["key"],
                    node_map=node_map,
                    attachments=[[(int(o), int(m)) for o, m in lst] for lst in atts],
                )
            )
        derivation = DerivationRecord(final_node=dobj["final_node"], steps=steps)
    return Grammar(
        rules=rules,
        start_key=obj["start_key"],
        params={"strategy": params["strategy"], "policy": params["policy"], "mu": params["mu"], "seed": params["seed"]},
        source_nodes=source["nodes"],
        source_edges=source["edges"],
        derivation=derivation,
    )


def grammar_from_json(text: str) -> Grammar:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GrammarError(f"grammar document is not valid JSON: {exc}") from exc
    return grammar_from_obj(obj)
