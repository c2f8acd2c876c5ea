"""Pure-numpy fallback for the trigonometric accumulation kernel."""

from __future__ import annotations

import numpy as np


def weighted_trig_sums(weights, freqs, phase, times):
    """sum_k w_k cos(f_k t + phase) and the matching sine, per time point.

    weights, freqs: shape (K,); times: shape (T,).  Returns two (T,) arrays.
    """
    weights = np.ascontiguousarray(weights, dtype=float)
    freqs = np.ascontiguousarray(freqs, dtype=float)
    times = np.ascontiguousarray(times, dtype=float)
    if weights.shape != freqs.shape:
        raise ValueError("weights and freqs must have the same length")
    args = np.multiply.outer(times, freqs) + phase
    return np.cos(args) @ weights, np.sin(args) @ weights
