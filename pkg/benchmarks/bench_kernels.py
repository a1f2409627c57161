#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Run as: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from guitartuner import _kernels_py, fir, kernels


def best_of(func, *args, repeats=7):
    timings = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        func(*args)
        timings.append(time.perf_counter() - t0)
    return min(timings)


def main():
    try:
        from guitartuner import _native
    except ImportError:
        _native = None

    print(f"active backend: {kernels.BACKEND}")
    backends = [("numpy", _kernels_py)] + ([("native", _native)] if _native else [])

    rng = np.random.default_rng(0)
    signal = rng.normal(size=16000)  # 2 s at 8000 Hz
    coeffs = np.asarray(fir.design_bandpass().coefficients)
    mags = rng.uniform(0, 1, size=32001)  # padded one-sided spectrum

    print(f"\nfir_apply_same: {len(signal)} samples x {len(coeffs)} taps")
    for name, impl in backends:
        elapsed = best_of(impl.fir_apply_same, signal, coeffs)
        print(f"  {name:>6}: {elapsed * 1e3:8.2f} ms")

    print(f"\nharmonic_sum_accumulate: {len(mags)} bins, factors (2, 3)")
    for name, impl in backends:
        elapsed = best_of(impl.harmonic_sum_accumulate, mags, (2, 3))
        print(f"  {name:>6}: {elapsed * 1e6:8.1f} us")

    if _native is not None:
        check = np.allclose(
            _native.fir_apply_same(signal, coeffs),
            _kernels_py.fir_apply_same(signal, coeffs),
            rtol=1e-10,
        )
        print(f"\nbackends agree: {check}")


if __name__ == "__main__":
    main()
