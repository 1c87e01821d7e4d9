"""Benchmark the compiled deduction kernel against the pure-Python fallback.

Times the two hot operations on identical random workloads: the closure
fixpoint and entailment-style satisfiability probes. Results double as a
parity spot-check (both backends must return identical outputs).

Usage:
    python benchmarks/bench_kernels.py [--sets N] [--symbols N] [--seed N]
"""

from __future__ import annotations

import argparse
import random
import time

from logicweave.logic import _kernel_py
from logicweave.logic._encoding import encode_implication, symbol_index, symbol_order
from logicweave.logic.syntax import ExpressionSet, Implication, Literal, SymbolId

try:
    from logicweave.logic import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def random_workload(rng: random.Random, n_symbols: int, n_implications: int):
    symbols = [SymbolId(f"S{i}") for i in range(n_symbols)]
    implications = []
    while len(implications) < n_implications:
        ant_syms = rng.sample(symbols, rng.randint(1, 3))
        antecedent = tuple(Literal(s, rng.random() < 0.5) for s in ant_syms)
        cons = Literal(rng.choice(symbols), rng.random() < 0.5)
        if cons in antecedent:
            continue
        try:
            implications.append(Implication(antecedent, cons))
        except Exception:
            continue
    es = ExpressionSet(tuple(implications), frozenset(symbols))
    order = symbol_order(es.symbols)
    index = symbol_index(order)
    return [encode_implication(imp, index) for imp in es], len(order)


def bench_closure(kernel, workloads, limits):
    started = time.perf_counter()
    outputs = []
    for items, _ in workloads:
        outputs.append(kernel.closure_kernel(items, *limits))
    return time.perf_counter() - started, outputs


def bench_satisfiable(kernel, workloads, probes_per_set, seed):
    rng = random.Random(seed)
    started = time.perf_counter()
    outputs = []
    for items, n in workloads:
        for _ in range(probes_per_set):
            fpos = rng.getrandbits(n)
            fneg = rng.getrandbits(n) & ~fpos
            outputs.append(kernel.satisfiable_with(n, items, fpos, fneg))
    return time.perf_counter() - started, outputs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sets", type=int, default=300)
    parser.add_argument("--symbols", type=int, default=10)
    parser.add_argument("--implications", type=int, default=14)
    parser.add_argument("--probes", type=int, default=50)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    workloads = [
        random_workload(rng, args.symbols, args.implications)
        for _ in range(args.sets)
    ]
    limits = (4, 2048, 16)

    print(
        f"workload: {args.sets} sets x {args.implications} implications "
        f"over {args.symbols} symbols; {args.probes} probes/set"
    )
    py_closure, py_out = bench_closure(_kernel_py, workloads, limits)
    py_sat, py_sat_out = bench_satisfiable(_kernel_py, workloads, args.probes, args.seed)
    print(f"python   closure: {py_closure:8.3f}s   satisfiable: {py_sat:8.3f}s")

    if _kernel_c is None:
        print("compiled kernel not built (pip install -e . builds it); nothing to compare")
        return
    c_closure, c_out = bench_closure(_kernel_c, workloads, limits)
    c_sat, c_sat_out = bench_satisfiable(_kernel_c, workloads, args.probes, args.seed)
    print(f"compiled closure: {c_closure:8.3f}s   satisfiable: {c_sat:8.3f}s")
    assert c_out == py_out, "backend closure outputs diverged"
    assert c_sat_out == py_sat_out, "backend satisfiability outputs diverged"
    print(
        f"speedup  closure: {py_closure / c_closure:7.1f}x   "
        f"satisfiable: {py_sat / c_sat:7.1f}x   (outputs identical)"
    )


if __name__ == "__main__":
    main()
