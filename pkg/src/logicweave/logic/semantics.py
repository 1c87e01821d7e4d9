"""Truth-table semantics: evaluation and the brute-force entailment oracle.

``entails`` enumerates truth assignments over the combined symbol universe,
independent of the syntactic closure machinery, and serves as the oracle
that validates it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from logicweave.errors import LogicweaveError
from logicweave.logic import backend
from logicweave.logic._encoding import encode_implication, symbol_index, symbol_order
from logicweave.logic.syntax import ExpressionSet, Implication, SymbolId

ENTAILS_MAX_SYMBOLS = 20


class UnknownSymbol(LogicweaveError):
    """Assignment does not cover a symbol the expression mentions."""


class UniverseTooLarge(LogicweaveError):
    """Brute-force entailment is capped at ENTAILS_MAX_SYMBOLS symbols."""


@dataclass(frozen=True)
class TruthAssignment:
    """A total boolean valuation over some universe of symbols."""

    values: Mapping[SymbolId, bool]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", MappingProxyType(dict(self.values)))

    def __getitem__(self, symbol: SymbolId) -> bool:
        try:
            return self.values[symbol]
        except KeyError:
            raise UnknownSymbol(f"assignment does not cover {symbol}")


def evaluate(imp: Implication, assign: TruthAssignment) -> bool:
    """False iff every antecedent literal holds and the consequent fails."""
    for lit in imp.antecedent:
        if assign[lit.symbol] == lit.negated:
            return True
    return assign[imp.consequent.symbol] != imp.consequent.negated


def iter_assignments(symbols: Iterable[SymbolId]) -> Iterator[TruthAssignment]:
    """All truth assignments over ``symbols``, in a fixed order."""
    ordered = symbol_order(symbols)
    for bits in product((False, True), repeat=len(ordered)):
        yield TruthAssignment(dict(zip(ordered, bits)))


def entails(premises: ExpressionSet, candidate: Implication) -> bool:
    """True iff ``candidate`` holds in every model of ``premises``.

    Brute force over all assignments of the combined universe; raises
    UniverseTooLarge above ENTAILS_MAX_SYMBOLS symbols.
    """
    universe = premises.symbols | candidate.symbols
    if len(universe) > ENTAILS_MAX_SYMBOLS:
        raise UniverseTooLarge(
            f"{len(universe)} symbols exceed the {ENTAILS_MAX_SYMBOLS}-symbol bound"
        )
    order = symbol_order(universe)
    index = symbol_index(order)
    items = [encode_implication(imp, index) for imp in premises]
    # A countermodel satisfies the premises with the candidate's antecedent
    # pinned true and its consequent pinned false.
    fixed_pos = fixed_neg = 0
    for lit in candidate.antecedent:
        bit = 1 << index[lit.symbol]
        if lit.negated:
            fixed_neg |= bit
        else:
            fixed_pos |= bit
    cons_bit = 1 << index[candidate.consequent.symbol]
    if candidate.consequent.negated:
        fixed_pos |= cons_bit
    else:
        fixed_neg |= cons_bit
    kernel = backend.kernel_for(len(order))
    return not kernel.satisfiable_with(len(order), items, fixed_pos, fixed_neg)
