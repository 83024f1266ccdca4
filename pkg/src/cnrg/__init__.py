"""Clustering-based node replacement grammars: extraction, generation, evaluation."""

from .clustering import STRATEGIES, Dendrogram, build_dendrogram
from .errors import (
    CnrgError,
    ContractMismatchError,
    EvaluationError,
    ExtractionError,
    GenerationError,
    GenerationStuckError,
    GrammarError,
    GraphError,
    InputFormatError,
    ReplayIntegrityError,
    SizeCapError,
    UnsupportedSizeError,
)
from .extraction import (
    POLICIES,
    DerivationRecord,
    DerivationStep,
    Grammar,
    Rule,
    extract,
    grammar_from_json,
    grammar_to_json,
)
from .generation import generate, replay
from .mdl import gamma_bits, gamma_len, grammar_dl, graph_dl, rule_dl
from .metrics import compare_report, graphlet_census, lambda_distance, spectrum
from .multigraph import Multigraph, parse_edgelist, read_edgelist, write_edgelist

__version__ = "0.1.0"

__all__ = [
    "CnrgError",
    "ContractMismatchError",
    "Dendrogram",
    "DerivationRecord",
    "DerivationStep",
    "EvaluationError",
    "ExtractionError",
    "GenerationError",
    "GenerationStuckError",
    "Grammar",
    "GrammarError",
    "GraphError",
    "InputFormatError",
    "Multigraph",
    "POLICIES",
    "ReplayIntegrityError",
    "Rule",
    "STRATEGIES",
    "SizeCapError",
    "UnsupportedSizeError",
    "build_dendrogram",
    "compare_report",
    "extract",
    "gamma_bits",
    "gamma_len",
    "generate",
    "grammar_dl",
    "grammar_from_json",
    "grammar_to_json",
    "graph_dl",
    "graphlet_census",
    "lambda_distance",
    "parse_edgelist",
    "read_edgelist",
    "replay",
    "rule_dl",
    "spectrum",
    "write_edgelist",
]
