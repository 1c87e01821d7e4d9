"""Shared generators for randomized logic tests."""

from __future__ import annotations

import random

from logicweave.logic import ExpressionSet, Implication, Literal, SymbolId

SYMBOL_POOL = [SymbolId(name) for name in "ABCDEFGH"]


def random_implication(
    rng: random.Random, symbols: list[SymbolId], max_antecedent: int = 3
) -> Implication:
    n_ant = rng.randint(1, min(max_antecedent, len(symbols) - 1))
    ant_syms = rng.sample(symbols, n_ant)
    antecedent = tuple(Literal(s, rng.random() < 0.5) for s in ant_syms)
    while True:
        cons = Literal(rng.choice(symbols), rng.random() < 0.5)
        if cons not in antecedent:
            return Implication(antecedent, cons)


def random_expression_set(
    rng: random.Random,
    n_symbols: int = 6,
    n_implications: int = 8,
    max_antecedent: int = 3,
) -> ExpressionSet:
    symbols = SYMBOL_POOL[:n_symbols]
    imps = [
        random_implication(rng, symbols, max_antecedent)
        for _ in range(rng.randint(1, n_implications))
    ]
    return ExpressionSet(tuple(imps), frozenset(symbols))
