# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled deduction kernel.

Step-for-step port of ``_kernel_py``; the two modules must stay
behaviorally identical (the parity tests compare them on random inputs).
Masks are 64-bit words, so this backend handles at most 64 symbols —
``backend.kernel_for`` routes larger universes to the pure kernel.
"""

from libc.stdint cimport int8_t, int32_t, uint64_t
from libc.stdlib cimport free, malloc, realloc

BACKEND_NAME = "compiled"

LIMIT_NONE = 0
LIMIT_DERIVED = 1
LIMIT_ROUNDS = 2

# must match logicweave.logic._encoding
cdef int RULE_CONTRAPOSITION = 1
cdef int RULE_CHAIN = 2


cdef struct Entry:
    uint64_t pos
    uint64_t neg
    int32_t cons_idx
    int8_t cons_neg
    int8_t rules
    int8_t alive


cdef inline int _popcount(uint64_t x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline bint _single_bit(uint64_t x):
    return x != 0 and (x & (x - 1)) == 0


cdef inline int _bit_index(uint64_t x):
    cdef int i = 0
    while not (x & 1):
        x >>= 1
        i += 1
    return i


cdef inline bint _covers(Entry* e, Entry* c):
    return (
        e.cons_idx == c.cons_idx
        and e.cons_neg == c.cons_neg
        and (e.pos & ~c.pos) == 0
        and (e.neg & ~c.neg) == 0
    )


cdef bint _contrapose(Entry* src, Entry* out):
    cdef uint64_t ant = src.pos | src.neg
    cdef uint64_t cons_bit
    if not _single_bit(ant):
        return False
    cons_bit = (<uint64_t>1) << src.cons_idx
    out.pos = cons_bit if src.cons_neg else 0
    out.neg = 0 if src.cons_neg else cons_bit
    out.cons_idx = _bit_index(ant)
    out.cons_neg = 1 if src.pos else 0
    out.rules = src.rules | RULE_CONTRAPOSITION
    out.alive = 1
    return True


cdef bint _chain(Entry* major, Entry* minor, Entry* out):
    cdef uint64_t cons_bit = (<uint64_t>1) << minor.cons_idx
    cdef uint64_t new_pos, new_neg, tgt_bit
    if minor.cons_neg:
        if not (major.neg & cons_bit):
            return False
        new_pos = major.pos | minor.pos
        new_neg = (major.neg & ~cons_bit) | minor.neg
    else:
        if not (major.pos & cons_bit):
            return False
        new_pos = (major.pos & ~cons_bit) | minor.pos
        new_neg = major.neg | minor.neg
    if new_pos & new_neg:
        return False
    tgt_bit = (<uint64_t>1) << major.cons_idx
    if (new_neg if major.cons_neg else new_pos) & tgt_bit:
        return False
    out.pos = new_pos
    out.neg = new_neg
    out.cons_idx = major.cons_idx
    out.cons_neg = major.cons_neg
    out.rules = major.rules | minor.rules | RULE_CHAIN
    out.alive = 1
    return True


def closure_kernel(items, int max_antecedent, int max_derived, int max_rounds):
    """Deductive closure of packed implications; see _kernel_py.closure_kernel."""
    cdef Py_ssize_t n_inputs = len(items)
    cdef Py_ssize_t capacity = n_inputs + 64
    cdef Entry* work = <Entry*>malloc(capacity * sizeof(Entry))
    if work == NULL:
        raise MemoryError()
    cdef Entry* grown
    cdef Py_ssize_t size = n_inputs
    cdef Py_ssize_t i, j, k, snapshot
    cdef int derived_count = 0
    cdef int limit_flag = LIMIT_NONE
    cdef int rounds_used = 0
    cdef bint added, merged
    cdef Entry cand

    try:
        for i in range(n_inputs):
            it = items[i]
            work[i].pos = <uint64_t>it[0]
            work[i].neg = <uint64_t>it[1]
            work[i].cons_idx = <int32_t>it[2]
            work[i].cons_neg = <int8_t>it[3]
            work[i].rules = 0
            work[i].alive = 1

        while rounds_used < max_rounds:
            rounds_used += 1
            snapshot = size
            added = False
            for i in range(snapshot):
                if not work[i].alive:
                    continue
                if _contrapose(&work[i], &cand):
                    # merge candidate
                    merged = False
                    if _popcount(cand.pos | cand.neg) <= max_antecedent:
                        merged = True
                        for k in range(n_inputs):
                            if _covers(&work[k], &cand):
                                merged = False
                                break
                        if merged:
                            for k in range(n_inputs, size):
                                if work[k].alive and _covers(&work[k], &cand):
                                    merged = False
                                    break
                        if merged:
                            for k in range(n_inputs, size):
                                if work[k].alive and _covers(&cand, &work[k]):
                                    work[k].alive = 0
                                    derived_count -= 1
                            if size == capacity:
                                capacity *= 2
                                grown = <Entry*>realloc(work, capacity * sizeof(Entry))
                                if grown == NULL:
                                    raise MemoryError()
                                work = grown
                            work[size] = cand
                            size += 1
                            derived_count += 1
                            if derived_count > max_derived:
                                limit_flag = LIMIT_DERIVED
                    if merged:
                        added = True
                        if limit_flag:
                            break
            if not limit_flag:
                for i in range(snapshot):
                    if limit_flag:
                        break
                    if not work[i].alive:
                        continue
                    for j in range(snapshot):
                        if i == j or not work[j].alive:
                            continue
                        if _chain(&work[i], &work[j], &cand):
                            merged = False
                            if _popcount(cand.pos | cand.neg) <= max_antecedent:
                                merged = True
                                for k in range(n_inputs):
                                    if _covers(&work[k], &cand):
                                        merged = False
                                        break
                                if merged:
                                    for k in range(n_inputs, size):
                                        if work[k].alive and _covers(&work[k], &cand):
                                            merged = False
                                            break
                                if merged:
                                    for k in range(n_inputs, size):
                                        if work[k].alive and _covers(&cand, &work[k]):
                                            work[k].alive = 0
                                            derived_count -= 1
                                    if size == capacity:
                                        capacity *= 2
                                        grown = <Entry*>realloc(work, capacity * sizeof(Entry))
                                        if grown == NULL:
                                            raise MemoryError()
                                        work = grown
                                    work[size] = cand
                                    size += 1
                                    derived_count += 1
                                    if derived_count > max_derived:
                                        limit_flag = LIMIT_DERIVED
                            if merged:
                                added = True
                                if limit_flag:
                                    break
            if limit_flag:
                break
            if not added:
                break
        else:
            limit_flag = LIMIT_ROUNDS

        derived = []
        for k in range(n_inputs, size):
            if work[k].alive:
                derived.append(
                    (
                        int(work[k].pos),
                        int(work[k].neg),
                        int(work[k].cons_idx),
                        int(work[k].cons_neg),
                        int(work[k].rules),
                    )
                )
        return derived, rounds_used, limit_flag
    finally:
        free(work)


def satisfiable_with(int n_symbols, items, fixed_pos_obj, fixed_neg_obj):
    """Satisfiability of packed implications under pinned literals;
    see _kernel_py.satisfiable_with."""
    cdef uint64_t fixed_pos = <uint64_t>fixed_pos_obj
    cdef uint64_t fixed_neg = <uint64_t>fixed_neg_obj
    if fixed_pos & fixed_neg:
        return False
    cdef Py_ssize_t n_items = len(items)
    cdef uint64_t full = ((<uint64_t>1) << n_symbols) - 1 if n_symbols < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef uint64_t free_mask = full & ~(fixed_pos | fixed_neg)
    cdef Py_ssize_t alloc_items = n_items if n_items > 0 else 1
    cdef uint64_t* pos = <uint64_t*>malloc(alloc_items * sizeof(uint64_t) * 3)
    if pos == NULL:
        raise MemoryError()
    cdef uint64_t* neg = pos + alloc_items
    cdef uint64_t* cons_bit = pos + 2 * alloc_items
    cdef int8_t* cons_neg = <int8_t*>malloc(alloc_items * sizeof(int8_t))
    if cons_neg == NULL:
        free(pos)
        raise MemoryError()
    cdef Py_ssize_t i
    cdef uint64_t subset = 0, assign
    cdef bint ok, cons_true

    try:
        for i in range(n_items):
            it = items[i]
            pos[i] = <uint64_t>it[0]
            neg[i] = <uint64_t>it[1]
            cons_bit[i] = (<uint64_t>1) << <int>it[2]
            cons_neg[i] = <int8_t>it[3]

        while True:
            assign = subset | fixed_pos
            ok = True
            for i in range(n_items):
                if (assign & pos[i]) == pos[i] and (assign & neg[i]) == 0:
                    cons_true = ((assign & cons_bit[i]) != 0) != (cons_neg[i] != 0)
                    if not cons_true:
                        ok = False
                        break
            if ok:
                return True
            if subset == free_mask:
                return False
            subset = (subset - free_mask) & free_mask
    finally:
        if pos != NULL:
            free(pos)
        if cons_neg != NULL:
            free(cons_neg)
