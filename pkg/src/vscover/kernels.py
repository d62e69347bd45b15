"""Kernel backend selection.

The compiled extension is used when it is importable; otherwise the
pure-Python twin takes over. Set VSC_PURE_PYTHON=1 to force the fallback
(useful for debugging and for benchmarks/compare_kernels.py).
"""

import os

from . import _kernels_py

FEASIBLE = _kernels_py.FEASIBLE
INFEASIBLE = _kernels_py.INFEASIBLE
UNKNOWN = _kernels_py.UNKNOWN

if os.environ.get("VSC_PURE_PYTHON", "0") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

greedy_rounds = _impl.greedy_rounds
classic_greedy_picks = _impl.classic_greedy_picks
cover_feasible = _impl.cover_feasible
