# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled trigonometric accumulation kernel.

Single pass over (time, term) pairs; avoids the T x K temporary the numpy
fallback allocates.
"""

from libc.math cimport cos, sin

import numpy as np


def weighted_trig_sums(weights, freqs, phase, times):
    """sum_k w_k cos(f_k t + phase) and the matching sine, per time point."""
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef double[::1] f = np.ascontiguousarray(freqs, dtype=np.float64)
    cdef double[::1] t = np.ascontiguousarray(times, dtype=np.float64)
    if w.shape[0] != f.shape[0]:
        raise ValueError("weights and freqs must have the same length")

    out_cos = np.empty(t.shape[0], dtype=np.float64)
    out_sin = np.empty(t.shape[0], dtype=np.float64)
    cdef double[::1] oc = out_cos
    cdef double[::1] os = out_sin
    cdef Py_ssize_t j, k, nt = t.shape[0], nk = w.shape[0]
    cdef double acc_c, acc_s, arg, ph = phase, tj

    with nogil:
        for j in range(nt):
            acc_c = 0.0
            acc_s = 0.0
            tj = t[j]
            for k in range(nk):
                arg = f[k] * tj + ph
                acc_c += w[k] * cos(arg)
                acc_s += w[k] * sin(arg)
            oc[j] = acc_c
            os[j] = acc_s
    return out_cos, out_sin
