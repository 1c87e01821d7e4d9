"""Bitmask packing of implications, shared by the deduction kernels.

Symbols are indexed by sorted name; an implication becomes
``(pos_mask, neg_mask, cons_index, cons_negated)`` where the two masks cover
the positive and negated antecedent literals. Both kernels consume and
produce these tuples, so results decode identically regardless of backend.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from logicweave.logic.syntax import Implication, Literal, SymbolId

RULE_CONTRAPOSITION = 1
RULE_CHAIN = 2

RULE_LABELS = {
    RULE_CONTRAPOSITION: "contraposition",
    RULE_CHAIN: "chain",
    RULE_CONTRAPOSITION | RULE_CHAIN: "contraposition+chain",
}

PackedImplication = tuple[int, int, int, int]


def symbol_order(symbols: Iterable[SymbolId]) -> list[SymbolId]:
    return sorted(symbols, key=lambda s: s.name)


def symbol_index(order: Sequence[SymbolId]) -> dict[SymbolId, int]:
    return {sym: i for i, sym in enumerate(order)}


def encode_implication(
    imp: Implication, index: Mapping[SymbolId, int]
) -> PackedImplication:
    pos = neg = 0
    for lit in imp.antecedent:
        bit = 1 << index[lit.symbol]
        if lit.negated:
            neg |= bit
        else:
            pos |= bit
    return (pos, neg, index[imp.consequent.symbol], int(imp.consequent.negated))


def decode_implication(
    packed: Sequence[int], order: Sequence[SymbolId]
) -> Implication:
    pos, neg, cons_idx, cons_neg = packed[0], packed[1], packed[2], packed[3]
    literals = []
    for i, sym in enumerate(order):
        bit = 1 << i
        if pos & bit:
            literals.append(Literal(sym))
        if neg & bit:
            literals.append(Literal(sym, negated=True))
    return Implication(tuple(literals), Literal(order[cons_idx], bool(cons_neg)))
