"""Finitely presented algebraic monads: terms, parsing, interpretation, proving."""
from .interpret import Interpretation, RelationsReport, TermMonad, TermOp, check_relations, interpret
from .models import FiniteModel, ModelClone, TableOp, find_countermodel, model_from_tables
from .parser import ParseError, parse_presentation, parse_term
from .prover import CongruenceClosure, ProofResult, derive_equal
from .rewriting import FreeTerms, Rewriter, free_terms, match
from .terms import (
    OpSymbol,
    Presentation,
    Relation,
    Term,
    format_term,
    interchange,
    tensor_presentation,
)

__all__ = [
    "CongruenceClosure",
    "FiniteModel",
    "FreeTerms",
    "Interpretation",
    "ModelClone",
    "OpSymbol",
    "ParseError",
    "Presentation",
    "ProofResult",
    "Relation",
    "RelationsReport",
    "Rewriter",
    "TableOp",
    "Term",
    "TermMonad",
    "TermOp",
    "check_relations",
    "derive_equal",
    "find_countermodel",
    "format_term",
    "free_terms",
    "interchange",
    "interpret",
    "match",
    "model_from_tables",
    "parse_presentation",
    "parse_term",
    "tensor_presentation",
]
