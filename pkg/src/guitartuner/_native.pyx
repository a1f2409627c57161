# cython: language_level=3
"""Compiled kernels: direct-form FIR convolution and harmonic-sum build.

Same interface as guitartuner._kernels_py; selected in guitartuner.kernels.
"""

import numpy as np


def fir_apply_same(const double[::1] samples, const double[::1] coeffs):
    """Circular convolution with the (L-1)//2 group delay compensated.

    Requires len(coeffs) <= len(samples). The signal is extended with its
    periodic wrap once up front so the inner loop is a branch-free
    forward dot product.
    """
    cdef Py_ssize_t n = samples.shape[0]
    cdef Py_ssize_t taps = coeffs.shape[0]
    cdef Py_ssize_t start = (taps - 1) // 2
    cdef Py_ssize_t left = taps - 1 - start
    cdef Py_ssize_t i, k

    ext_arr = np.empty(n + taps - 1, dtype=np.float64)
    cdef double[::1] ext = ext_arr
    for i in range(left):
        ext[i] = samples[n - left + i]
    for i in range(n):
        ext[left + i] = samples[i]
    for i in range(start):
        ext[left + n + i] = samples[i]

    # y[i] = sum_k coeffs[k] * ext[i + taps - 1 - k]; reversing the
    # coefficients makes both reads ascend in memory
    rev_arr = np.empty(taps, dtype=np.float64)
    cdef double[::1] rev = rev_arr
    for k in range(taps):
        rev[k] = coeffs[taps - 1 - k]

    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] y = out
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(taps):
            acc += rev[k] * ext[i + k]
        y[i] = acc
    return out


def harmonic_sum_accumulate(const double[::1] magnitudes, factors):
    """Sum of the spectrum and its bin-decimated, zero-padded copies."""
    cdef Py_ssize_t n = magnitudes.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] y = out
    cdef Py_ssize_t i, k, factor
    for i in range(n):
        y[i] = magnitudes[i]
    for factor_obj in factors:
        factor = factor_obj
        k = 0
        i = 0
        while i < n:
            y[k] += magnitudes[i]
            k += 1
            i += factor
    return out
