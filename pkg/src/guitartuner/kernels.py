"""Backend selection for the hot numeric kernels.

Prefers the compiled extension when it was built; otherwise falls back to
the numpy implementation. BACKEND names the active one ("native" or
"numpy") for diagnostics and the benchmark script.
"""

try:
    from guitartuner import _native as _impl

    BACKEND = "native"
except ImportError:  # extension not built for this interpreter
    from guitartuner import _kernels_py as _impl

    BACKEND = "numpy"

fir_apply_same = _impl.fir_apply_same
harmonic_sum_accumulate = _impl.harmonic_sum_accumulate
