"""Select the compiled kernels when available, else the pure-Python ones.

Set ``GKM_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("GKM_PURE_PYTHON"):
    from ._kernels_py import add_terms, mul_terms, row_reduce

    BACKEND = "python"
else:
    try:
        from ._kernels import add_terms, mul_terms, row_reduce

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import add_terms, mul_terms, row_reduce

        BACKEND = "python"

__all__ = ["BACKEND", "add_terms", "mul_terms", "row_reduce"]
