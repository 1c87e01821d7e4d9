"""Pure-Python deduction kernel.

Reference implementation of the two hot operations: the closure fixpoint
over packed implications and the truth-assignment satisfiability probe.
The compiled kernel (``_kernel.pyx``) mirrors this module step for step;
any behavioral change here must be ported there to keep the backends
byte-for-byte interchangeable.

Masks are plain Python ints, so this backend has no symbol-count ceiling.
"""

from __future__ import annotations

from typing import Sequence

from logicweave.logic._encoding import RULE_CHAIN, RULE_CONTRAPOSITION

BACKEND_NAME = "python"

LIMIT_NONE = 0
LIMIT_DERIVED = 1
LIMIT_ROUNDS = 2

# Working entries are [pos, neg, cons_idx, cons_neg, rule_mask].


def _contrapose(entry: list[int]) -> list[int] | None:
    pos, neg, cons_idx, cons_neg, rules = entry
    ant = pos | neg
    if ant & (ant - 1):  # more than one antecedent literal
        return None
    cons_bit = 1 << cons_idx
    new_pos = cons_bit if cons_neg else 0
    new_neg = 0 if cons_neg else cons_bit
    # new consequent = complement of the single antecedent literal
    idx = ant.bit_length() - 1
    new_cons_neg = 1 if pos else 0
    return [new_pos, new_neg, idx, new_cons_neg, rules | RULE_CONTRAPOSITION]


def _chain(major: list[int], minor: list[int]) -> list[int] | None:
    mpos, mneg, mcons_idx, mcons_neg, mrules = major
    spos, sneg, scons_idx, scons_neg, srules = minor
    cons_bit = 1 << scons_idx
    if scons_neg:
        if not (mneg & cons_bit):
            return None
        new_pos = mpos | spos
        new_neg = (mneg & ~cons_bit) | sneg
    else:
        if not (mpos & cons_bit):
            return None
        new_pos = (mpos & ~cons_bit) | spos
        new_neg = mneg | sneg
    if new_pos & new_neg:  # vacuous
        return None
    tgt_bit = 1 << mcons_idx
    if (new_neg if mcons_neg else new_pos) & tgt_bit:  # tautological
        return None
    return [new_pos, new_neg, mcons_idx, mcons_neg, mrules | srules | RULE_CHAIN]


def _covers(entry: Sequence[int], cand: Sequence[int]) -> bool:
    """entry subsumes (or equals) cand: same consequent, subset antecedent."""
    return (
        entry[2] == cand[2]
        and entry[3] == cand[3]
        and not (entry[0] & ~cand[0])
        and not (entry[1] & ~cand[1])
    )


def closure_kernel(
    items: Sequence[Sequence[int]],
    max_antecedent: int,
    max_derived: int,
    max_rounds: int,
) -> tuple[list[tuple[int, int, int, int, int]], int, int]:
    """Deductive closure of ``items`` under chaining and contraposition.

    Returns ``(derived, rounds_used, limit_flag)`` where each derived entry
    is ``(pos, neg, cons_idx, cons_neg, rule_mask)``, new with respect to the
    inputs and mutually subsumption-minimal. ``limit_flag`` is LIMIT_DERIVED
    or LIMIT_ROUNDS when the fixpoint was cut short, else LIMIT_NONE.
    """
    n_inputs = len(items)
    work: list[list[int]] = [[it[0], it[1], it[2], it[3], 0] for it in items]
    alive = [True] * n_inputs
    derived_count = 0
    limit_flag = LIMIT_NONE
    rounds_used = 0

    def merge(cand: list[int]) -> bool:
        nonlocal derived_count, limit_flag
        card = bin(cand[0] | cand[1]).count("1")
        if card > max_antecedent:
            return False
        for k in range(n_inputs):
            if _covers(work[k], cand):
                return False
        for k in range(n_inputs, len(work)):
            if alive[k] and _covers(work[k], cand):
                return False
        for k in range(n_inputs, len(work)):
            if alive[k] and _covers(cand, work[k]):
                alive[k] = False
                derived_count -= 1
        work.append(cand)
        alive.append(True)
        derived_count += 1
        if derived_count > max_derived:
            limit_flag = LIMIT_DERIVED
        return True

    while rounds_used < max_rounds:
        rounds_used += 1
        snapshot = len(work)
        added = False
        for i in range(snapshot):
            if not alive[i]:
                continue
            cand = _contrapose(work[i])
            if cand is not None and merge(cand):
                added = True
                if limit_flag:
                    break
        if not limit_flag:
            for i in range(snapshot):
                if limit_flag:
                    break
                if not alive[i]:
                    continue
                for j in range(snapshot):
                    if i == j or not alive[j]:
                        continue
                    cand = _chain(work[i], work[j])
                    if cand is not None and merge(cand):
                        added = True
                        if limit_flag:
                            break
        if limit_flag:
            break
        if not added:
            break
    else:
        limit_flag = LIMIT_ROUNDS

    derived = [
        (e[0], e[1], e[2], e[3], e[4])
        for k, e in enumerate(work[n_inputs:], start=n_inputs)
        if alive[k]
    ]
    return derived, rounds_used, limit_flag


def satisfiable_with(
    n_symbols: int,
    items: Sequence[Sequence[int]],
    fixed_pos: int,
    fixed_neg: int,
) -> bool:
    """True when some assignment satisfies every implication in ``items``
    while keeping the ``fixed_pos`` symbols true and ``fixed_neg`` false.

    Enumerates only the free symbols, so pinned checks stay cheap.
    """
    if fixed_pos & fixed_neg:
        return False
    full = (1 << n_symbols) - 1
    free = full & ~(fixed_pos | fixed_neg)
    packed = [(it[0], it[1], 1 << it[2], it[3]) for it in items]
    subset = 0
    while True:
        assign = subset | fixed_pos
        ok = True
        for pos, neg, cons_bit, cons_neg in packed:
            if (assign & pos) == pos and not (assign & neg):
                cons_true = bool(assign & cons_bit) != bool(cons_neg)
                if not cons_true:
                    ok = False
                    break
        if ok:
            return True
        if subset == free:
            return False
        subset = (subset - free) & free
