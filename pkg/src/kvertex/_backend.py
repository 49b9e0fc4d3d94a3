"""Select the term-kernel backend at import time.

The compiled extension is preferred when it has been built; setting
KVERTEX_PURE_PYTHON=1 forces the pure-Python kernels (useful for the
benchmark and for parity testing).
"""
import os

if os.environ.get("KVERTEX_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def backend_name() -> str:
    return "compiled" if kernels.__name__.endswith("._kernels") else "python"
