"""Pure-Python (numpy-vectorised) fallback for the compiled kernels."""

import numpy as np


def minmax_closure_inplace(m):
    """Replace ``m`` by its bottleneck (min, max) closure, in place."""
    n = m.shape[0]
    for k in range(n):
        col = m[:, k : k + 1].copy()
        row = m[k : k + 1, :].copy()
        np.minimum(m, np.maximum(col, row), out=m)
