"""Numpy implementations of the hot kernels.

Mirrors the interface of the compiled extension (guitartuner._native); the
active implementation is chosen in guitartuner.kernels at import time.
"""

from __future__ import annotations

import numpy as np


def fir_apply_same(samples: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Circular convolution with the (L-1)//2 group delay compensated.

    Filters the periodic extension of the frame, so the filter's
    steady-state response applies to every output sample. Requires
    len(coeffs) <= len(samples).
    """
    n = len(samples)
    full = np.convolve(samples, coeffs)
    wrapped = full[:n].copy()
    wrapped[: len(coeffs) - 1] += full[n:]
    return np.roll(wrapped, -((len(coeffs) - 1) // 2))


def harmonic_sum_accumulate(magnitudes: np.ndarray, factors: tuple[int, ...]) -> np.ndarray:
    """Sum of the spectrum and its bin-decimated copies.

    out[k] = mags[k] + sum over f of mags[k*f], with k*f past the end
    contributing zero (the decimated copies are zero-padded to full length).
    """
    out = np.array(magnitudes, dtype=np.float64)
    n = len(out)
    for factor in factors:
        kept = -(-n // factor)  # ceil(n / factor)
        out[:kept] += magnitudes[::factor]
    return out
