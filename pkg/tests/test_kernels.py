import importlib
import os
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from gkm import _backend, _kernels_py

try:
    _cy = importlib.import_module("gkm._kernels")
except ImportError:  # compiled kernels not built
    _cy = None

needs_cython = pytest.mark.skipif(_cy is None, reason="compiled kernels not built")

exps = st.tuples(st.integers(-3, 3), st.integers(0, 3))
term_maps = st.dictionaries(exps, st.integers(-50, 50).filter(bool), max_size=6)
rows = st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=1, max_size=5)


def test_backend_reports_name():
    assert _backend.BACKEND in ("cython", "python")


def test_python_mul_cancels():
    a = {(1, 0): 1, (0, 1): 1}
    b = {(1, 0): 1, (0, 1): -1}
    assert _kernels_py.mul_terms(a, b) == {(2, 0): 1, (0, 2): -1}


def test_python_row_reduce_primitive_rows():
    rows, piv = _kernels_py.row_reduce([[2, 4, 6], [1, 1, 1]], 3)
    assert piv == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2]]


@needs_cython
@settings(max_examples=200)
@given(term_maps, term_maps)
def test_mul_agrees(a, b):
    assert _cy.mul_terms(a, b) == _kernels_py.mul_terms(a, b)


@needs_cython
@settings(max_examples=200)
@given(term_maps, term_maps, st.integers(-3, 3))
def test_add_agrees(a, b, k):
    assert _cy.add_terms(a, b, k) == _kernels_py.add_terms(a, b, k)


@needs_cython
@settings(max_examples=200)
@given(rows)
def test_row_reduce_agrees(m):
    assert _cy.row_reduce([r[:] for r in m], 4) == _kernels_py.row_reduce([r[:] for r in m], 4)


def test_environment_forces_fallback():
    env = {**os.environ, "GKM_PURE_PYTHON": "1"}
    code = "import gkm; print(gkm.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_benchmark_script_runs():
    script = Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--repeat", "1"], capture_output=True, text=True, check=True)
    assert "row_reduce" in out.stdout
