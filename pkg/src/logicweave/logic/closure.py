"""Deductive extension of implication sets: contraposition, chaining, closure.

The closure applies two rules to fixpoint:

* contraposition of single-antecedent implications,
  ``p → q`` becoming ``¬q → ¬p``;
* generalized unit chaining, from ``S → l`` and ``T ∪ {l} → m`` deriving
  ``S ∪ T → m`` (plain transitivity is the singleton case).

Output contains only implications new with respect to the input: nothing
equal to or subsumed by an input survives, derived implications that subsume
weaker derived ones evict them, and each survivor carries the label of the
rule(s) that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass

from logicweave.errors import LogicweaveError
from logicweave.logic import backend
from logicweave.logic._encoding import (
    RULE_LABELS,
    decode_implication,
    encode_implication,
    symbol_index,
    symbol_order,
)
from logicweave.logic._kernel_py import LIMIT_DERIVED, LIMIT_ROUNDS
from logicweave.logic.syntax import (
    ExpressionSet,
    Implication,
    Tautology,
    VacuousExpression,
)


@dataclass(frozen=True)
class ClosureLimits:
    """Termination guards for the closure fixpoint."""

    max_antecedent: int = 4
    max_derived: int = 256
    max_rounds: int = 16

    def __post_init__(self) -> None:
        if min(self.max_antecedent, self.max_derived, self.max_rounds) < 1:
            raise ValueError("closure limits must all be >= 1")


class LimitExceeded(LogicweaveError):
    """A closure limit was hit before the fixpoint; carries the partial result."""

    def __init__(self, limit: str, partial: ExpressionSet, rounds: int):
        super().__init__(f"closure {limit} limit exceeded after {rounds} round(s)")
        self.limit = limit
        self.partial = partial
        self.rounds = rounds


def contrapose(imp: Implication) -> Implication | None:
    """``p → q`` becomes ``¬q → ¬p``; absent for multi-antecedent implications
    (their contrapositive leaves the conjunctive fragment)."""
    if len(imp.antecedent) != 1:
        return None
    return Implication(
        (imp.consequent.complement(),), imp.antecedent[0].complement()
    )


def chain(major: Implication, minor: Implication) -> Implication | None:
    """Resolve ``minor``'s consequent against ``major``'s antecedent.

    From ``T ∪ {l} → m`` (major) and ``S → l`` (minor) derives
    ``S ∪ T → m``; absent when the literal does not occur or the result
    would be vacuous or tautological.
    """
    if minor.consequent not in major.antecedent:
        return None
    merged = (set(major.antecedent) - {minor.consequent}) | set(minor.antecedent)
    try:
        return Implication(tuple(merged), major.consequent)
    except (VacuousExpression, Tautology):
        return None


_LIMIT_NAMES = {LIMIT_DERIVED: "derived", LIMIT_ROUNDS: "rounds"}


def closure(
    expressions: ExpressionSet, limits: ClosureLimits = ClosureLimits()
) -> ExpressionSet:
    """All implications derivable from ``expressions`` under the limits.

    Deterministic: for identical input the result (and its ordering) is
    identical across runs and backends. Raises LimitExceeded with the
    partial result attached when a guard fires before the fixpoint.
    """
    order = symbol_order(expressions.symbols)
    index = symbol_index(order)
    items = [encode_implication(imp, index) for imp in expressions]
    kernel = backend.kernel_for(len(order))
    derived, rounds, flag = kernel.closure_kernel(
        items, limits.max_antecedent, limits.max_derived, limits.max_rounds
    )
    provenance = {}
    implications = []
    for entry in derived:
        imp = decode_implication(entry, order)
        implications.append(imp)
        provenance[imp] = RULE_LABELS[entry[4]]
    result = ExpressionSet(tuple(implications), expressions.symbols, provenance)
    if flag:
        raise LimitExceeded(_LIMIT_NAMES[flag], result, rounds)
    return result
