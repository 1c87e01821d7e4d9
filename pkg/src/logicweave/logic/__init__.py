"""Propositional implication fragment: syntax, deductive closure, semantics."""

from logicweave.logic.backend import BACKEND_NAME
from logicweave.logic.closure import (
    ClosureLimits,
    LimitExceeded,
    chain,
    closure,
    contrapose,
)
from logicweave.logic.semantics import (
    TruthAssignment,
    UniverseTooLarge,
    UnknownSymbol,
    entails,
    evaluate,
    iter_assignments,
)
from logicweave.logic.syntax import (
    ExpressionSet,
    Implication,
    Literal,
    ParseError,
    SymbolId,
    Tautology,
    VacuousExpression,
    format_expression,
    parse_expression,
    parse_literal,
    subsumes,
)

__all__ = [
    "BACKEND_NAME",
    "ClosureLimits",
    "ExpressionSet",
    "Implication",
    "LimitExceeded",
    "Literal",
    "ParseError",
    "SymbolId",
    "Tautology",
    "TruthAssignment",
    "UniverseTooLarge",
    "UnknownSymbol",
    "VacuousExpression",
    "chain",
    "closure",
    "contrapose",
    "entails",
    "evaluate",
    "format_expression",
    "iter_assignments",
    "parse_expression",
    "parse_literal",
    "subsumes",
]
