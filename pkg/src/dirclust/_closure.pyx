# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled (min, max) all-pairs closure."""

from cython.parallel cimport prange
from libc.math cimport INFINITY


def minmax_closure_inplace(double[:, ::1] m):
    """Replace ``m`` by its bottleneck (min, max) closure, in place.

    Floyd-Warshall ordering; row ``k`` and column ``k`` are fixed during
    round ``k`` because the diagonal is zero, so rows update independently
    and are split across OpenMP threads when the build enables it.
    """
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double mik, v
    cdef double* rowk
    cdef double* rowi
    for k in range(n):
        rowk = &m[k, 0]
        for i in prange(n, nogil=True, schedule="static"):
            mik = m[i, k]
            if mik == INFINITY or i == k:
                continue
            rowi = &m[i, 0]
            for j in range(n):  # branch-free so the compiler can vectorise
                v = rowk[j] if rowk[j] > mik else mik
                rowi[j] = v if v < rowi[j] else rowi[j]
