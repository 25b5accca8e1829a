"""Kernel backend selection.

The hot search kernels exist twice: numba-compiled (``_kernels_numba``) and
pure Python (``_kernels_py``).  The environment variable
``BLOCKMATCH_BACKEND`` picks one:

* unset or ``auto`` -- numba if importable, Python otherwise;
* ``numba``         -- numba, error if unavailable;
* ``python``        -- the pure-Python path.

Selection happens once at import time; ``benchmarks/bench_backends.py``
imports both implementation modules directly to compare them.
"""

from __future__ import annotations

import os

ENV_VAR = "BLOCKMATCH_BACKEND"


def _select():
    choice = os.environ.get(ENV_VAR, "auto").strip().lower() or "auto"
    if choice == "auto":
        try:
            from . import _kernels_numba as impl

            return impl, "numba"
        except ImportError:
            from . import _kernels_py as impl

            return impl, "python"
    if choice == "numba":
        from . import _kernels_numba as impl

        return impl, "numba"
    if choice in ("python", "py", "numpy"):
        from . import _kernels_py as impl

        return impl, "python"
    raise ValueError(
        f"unknown {ENV_VAR}={choice!r}; expected 'auto', 'numba' or 'python'"
    )


_impl, _name = _select()

perfect_matching = _impl.perfect_matching
cover_matching = _impl.cover_matching
max_matching_size = _impl.max_matching_size
graph_cover_exists = _impl.graph_cover_exists


def backend_name() -> str:
    """Name of the active kernel backend ('numba' or 'python')."""
    return _name


def warmup() -> str:
    """Run every kernel once on tiny inputs (forces JIT compilation)."""
    import numpy as np

    masks = np.array([0b011, 0b110, 0b101], dtype=np.int64)
    starts = np.array([0, 2, 4, 6], dtype=np.int64)
    items = np.array([0, 2, 0, 1, 1, 2], dtype=np.int64)
    perfect_matching(masks, starts, items, 3)
    cover_matching(masks, starts, items, 2, 0b011, 2)
    max_matching_size(masks, starts, items, 3)
    graph_cover_exists(masks, starts, items, 3, 0b001)
    return _name
