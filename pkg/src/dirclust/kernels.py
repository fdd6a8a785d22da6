"""Hot-loop kernels, compiled when available.

The Cython extension ``dirclust._closure`` is used if it was built; otherwise
the numpy implementation in ``dirclust._fallback`` is used. Setting the
environment variable ``DIRCLUST_PURE_PYTHON=1`` forces the fallback.
"""

import os

import numpy as np

from . import _fallback

BACKEND = "python"
_compiled = None

if os.environ.get("DIRCLUST_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _closure as _compiled

        BACKEND = "cython"
    except ImportError:  # extension not built
        _compiled = None


def minmax_closure(dissim, backend=None):
    """Return the all-pairs (min, max) closure of a square matrix.

    ``out[i, j]`` is the smallest achievable maximum link weight over chains
    from ``i`` to ``j``. The input is not modified. ``backend`` may be
    ``"cython"`` or ``"python"`` to override the import-time choice.
    """
    m = np.array(dissim, dtype=np.float64, order="C", copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("closure needs a square matrix")
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled backend is not available")
        _compiled.minmax_closure_inplace(m)
    elif backend == "python":
        _fallback.minmax_closure_inplace(m)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return m


def available_backends():
    return ["cython", "python"] if _compiled is not None else ["python"]
