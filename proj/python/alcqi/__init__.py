"""Satisfiability of ALCQI concepts with respect to general TBoxes."""

from ._alcqi import (
    Axiom,
    Concept,
    Limits,
    OracleRefusal,
    ParseError,
    ProblemFile,
    ResourceLimitError,
    Result,
    decide,
    decide_problem,
    find_model,
    generate_corpus,
    parse_problem,
    parse_tbox,
)

__all__ = [
    "Axiom",
    "Concept",
    "Limits",
    "OracleRefusal",
    "ParseError",
    "ProblemFile",
    "ResourceLimitError",
    "Result",
    "decide",
    "decide_problem",
    "find_model",
    "generate_corpus",
    "parse_problem",
    "parse_tbox",
]
