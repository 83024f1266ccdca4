"""Exception hierarchy for the cnrg package.

The CLI maps these onto exit codes: input problems exit 2, grammar
problems exit 3, generation/evaluation problems exit 4.
"""

from __future__ import annotations


class CnrgError(Exception):
    """Base class for all package errors."""


class GraphError(CnrgError):
    """Structural misuse of the multigraph API (self-loop, bad multiplicity, ...)."""


class InputFormatError(CnrgError):
    """Malformed edge-list input."""


class ContractMismatchError(GraphError):
    """Declared nonterminal size does not equal the computed boundary size."""


class UnsupportedSizeError(CnrgError):
    """Graph too large for exact canonical-form search."""


class GrammarError(CnrgError):
    """Invalid or corrupt grammar (bad JSON document, broken invariants)."""


class ReplayIntegrityError(GrammarError):
    """Derivation record inconsistent with the grammar or the rebuilt graph."""


class ExtractionError(CnrgError):
    """Extraction loop violated its progress guarantee."""


class GenerationError(CnrgError):
    """Stochastic generation failed."""


class GenerationStuckError(GenerationError, GrammarError):
    """A nonterminal has no rule with a matching size; the grammar is corrupt."""


class SizeCapError(GenerationError):
    """Every retry exceeded the generation size cap."""


class EvaluationError(CnrgError):
    """Metric computation failed (eigensolver trouble, empty input, ...)."""
