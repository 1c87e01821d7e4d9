"""Parity between the compiled kernel and the pure-Python reference.

The two backends implement one algorithm; on identical packed input they
must return identical derivations (including rule masks, ordering, and
limit flags) and identical satisfiability answers.
"""

import random

import pytest

from logicweave.logic import _kernel_py
from logicweave.logic._encoding import encode_implication, symbol_index, symbol_order
from logicweave.logic import backend

from conftest import random_expression_set, random_implication, SYMBOL_POOL

compiled = pytest.importorskip(
    "logicweave.logic._kernel", reason="compiled kernel not built"
)


def packed_set(rng, n_symbols=6, n_implications=10):
    es = random_expression_set(rng, n_symbols=n_symbols, n_implications=n_implications)
    order = symbol_order(es.symbols)
    index = symbol_index(order)
    return [encode_implication(i, index) for i in es], len(order)


def test_backend_selection_reports_a_kernel():
    assert backend.BACKEND_NAME in {"compiled", "python"}
    assert backend.kernel_for(4).BACKEND_NAME == backend.BACKEND_NAME
    assert backend.kernel_for(100) is _kernel_py


@pytest.mark.parametrize("seed", range(30))
def test_closure_parity(seed):
    rng = random.Random(seed)
    items, _ = packed_set(rng)
    for limits in [(4, 256, 16), (3, 8, 16), (4, 10000, 2)]:
        got_c = compiled.closure_kernel(items, *limits)
        got_py = _kernel_py.closure_kernel(items, *limits)
        assert got_c == got_py


@pytest.mark.parametrize("seed", range(20))
def test_satisfiable_parity(seed):
    rng = random.Random(1000 + seed)
    items, n = packed_set(rng)
    for _ in range(30):
        fpos = rng.getrandbits(n)
        fneg = rng.getrandbits(n)
        assert compiled.satisfiable_with(n, items, fpos, fneg) == (
            _kernel_py.satisfiable_with(n, items, fpos, fneg)
        )


def test_empty_inputs():
    assert compiled.closure_kernel([], 4, 256, 16) == _kernel_py.closure_kernel(
        [], 4, 256, 16
    )
    assert compiled.satisfiable_with(3, [], 0, 0) is True
    assert _kernel_py.satisfiable_with(3, [], 0, 0) is True


def test_pure_python_env_override(monkeypatch):
    # re-import of the backend module honors LOGICWEAVE_PURE_PYTHON
    import importlib

    monkeypatch.setenv("LOGICWEAVE_PURE_PYTHON", "1")
    mod = importlib.reload(backend)
    try:
        assert mod.BACKEND_NAME == "python"
    finally:
        monkeypatch.delenv("LOGICWEAVE_PURE_PYTHON")
        importlib.reload(backend)
