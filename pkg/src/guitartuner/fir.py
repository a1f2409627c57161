"""Linear-phase FIR filters built from a windowed sinc with a Hamming window.

The bandpass keeps the open-string fundamentals and their first harmonics
(75-1320 Hz by default) while cutting low-frequency noise and anything above
the third harmonic. Cutoffs follow the -6 dB convention of the windowed-sinc
construction; the Hamming window buys >50 dB of stopband rejection at a
transition width of about 3.3/L of the sample rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .dsp import SampleBuffer
from .errors import InvalidArgumentError


@dataclass(frozen=True)
class FilterSpec:
    """Bandpass design parameters. Defaults are the guitar passband."""

    low_cutoff: float = 75.0
    high_cutoff: float = 1320.0
    transition_bandwidth: float = 25.0
    min_stopband_attenuation: float = 50.0
    sample_rate: int = 8000

    def __post_init__(self):
        if not (0 < self.low_cutoff < self.high_cutoff < self.sample_rate / 2):
            raise InvalidArgumentError(
                "cutoffs must satisfy 0 < low < high < Nyquist, got "
                f"low={self.low_cutoff}, high={self.high_cutoff}, fs={self.sample_rate}"
            )
        if self.transition_bandwidth <= 0:
            raise InvalidArgumentError(
                f"transition_bandwidth must be positive, got {self.transition_bandwidth}"
            )
        # a Hamming window caps sidelobe rejection at about 53 dB
        if not (0 < self.min_stopband_attenuation <= 53):
            raise InvalidArgumentError(
                "min_stopband_attenuation must lie in (0, 53] dB for a Hamming design, "
                f"got {self.min_stopband_attenuation}"
            )


@dataclass(frozen=True)
class FirFilter:
    """Symmetric (linear-phase) FIR coefficients bound to a sample rate."""

    coefficients: np.ndarray
    sample_rate: int

    def __post_init__(self):
        coeffs = np.array(self.coefficients, dtype=np.float64)
        if coeffs.ndim != 1 or len(coeffs) == 0:
            raise InvalidArgumentError("coefficients must be a non-empty one-dimensional sequence")
        if self.sample_rate <= 0:
            raise InvalidArgumentError(f"sample_rate must be positive, got {self.sample_rate}")
        scale = np.abs(coeffs).max()
        if scale > 0 and np.abs(coeffs - coeffs[::-1]).max() > 1e-9 * scale:
            raise InvalidArgumentError("coefficients must be symmetric (linear phase)")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    def __len__(self) -> int:
        return len(self.coefficients)


def _tap_count(sample_rate: float, transition_bandwidth: float) -> int:
    """Smallest odd tap count reaching the requested transition width.

    Hamming windows give a transition of roughly 3.3/L in normalized
    frequency, so L >= 3.3 * fs / transition.
    """
    taps = math.ceil(3.3 * sample_rate / transition_bandwidth)
    return taps if taps % 2 == 1 else taps + 1


def _hamming(length: int) -> np.ndarray:
    if length == 1:
        return np.ones(1)
    n = np.arange(length)
    return 0.54 - 0.46 * np.cos(2.0 * np.pi * n / (length - 1))


def _ideal_lowpass(cutoff: float, length: int, sample_rate: float) -> np.ndarray:
    # sinc impulse response of a unity-gain lowpass with -6 dB point at cutoff
    normalized = cutoff / sample_rate
    n = np.arange(length) - (length - 1) / 2
    return 2.0 * normalized * np.sinc(2.0 * normalized * n)


def _symmetrize(coeffs: np.ndarray) -> np.ndarray:
    # enforce exact coefficient symmetry against last-ulp libm asymmetries
    return (coeffs + coeffs[::-1]) / 2.0


def design_bandpass(spec: FilterSpec = FilterSpec()) -> FirFilter:
    """Hamming-windowed sinc bandpass for the given spec.

    The ideal response is the difference of two lowpass sincs, so each
    cutoff sits at the -6 dB point of its transition.
    """
    taps = _tap_count(spec.sample_rate, spec.transition_bandwidth)
    ideal = _ideal_lowpass(spec.high_cutoff, taps, spec.sample_rate) - _ideal_lowpass(
        spec.low_cutoff, taps, spec.sample_rate
    )
    return FirFilter(_symmetrize(ideal * _hamming(taps)), spec.sample_rate)


def design_lowpass(cutoff: float, transition_bandwidth: float, sample_rate: int) -> FirFilter:
    """Hamming-windowed sinc lowpass; used as the decimation anti-alias filter."""
    if not (0 < cutoff < sample_rate / 2):
        raise InvalidArgumentError(
            f"cutoff must lie in (0, Nyquist), got {cutoff} at fs={sample_rate}"
        )
    if transition_bandwidth <= 0:
        raise InvalidArgumentError(
            f"transition_bandwidth must be positive, got {transition_bandwidth}"
        )
    taps = _tap_count(sample_rate, transition_bandwidth)
    return FirFilter(
        _symmetrize(_ideal_lowpass(cutoff, taps, sample_rate) * _hamming(taps)), sample_rate
    )


def frequency_response(filt: FirFilter, frequency: float) -> float:
    """Magnitude of the filter's frequency response at one frequency, in dB.

    Returns -inf where the response is exactly zero (e.g. a null at Nyquist).
    """
    if not (0 <= frequency <= filt.sample_rate / 2):
        raise InvalidArgumentError(
            f"frequency must lie in [0, Nyquist], got {frequency} at fs={filt.sample_rate}"
        )
    omega = 2.0 * np.pi * frequency / filt.sample_rate
    phases = np.exp(-1j * omega * np.arange(len(filt)))
    magnitude = abs(np.dot(filt.coefficients, phases))
    if magnitude == 0.0:
        return float("-inf")
    return 20.0 * math.log10(magnitude)


def apply(filt: FirFilter, buffer: SampleBuffer) -> SampleBuffer:
    """Filter a buffer, preserving its length and alignment.

    Convolves against the periodic extension of the frame (circular
    convolution) and compensates the (L-1)/2 group delay, so the filter's
    steady-state response applies to every output sample; a symmetric filter
    acts with zero phase. Only magnitude spectra are consumed downstream,
    where the wrap seam is immaterial.
    """
    if filt.sample_rate != buffer.sample_rate:
        raise InvalidArgumentError(
            f"sample-rate mismatch: filter at {filt.sample_rate} Hz, buffer at {buffer.sample_rate} Hz"
        )
    if len(buffer) < len(filt):
        raise InvalidArgumentError(
            f"buffer ({len(buffer)} samples) must be at least as long as the filter ({len(filt)} taps)"
        )
    filtered = kernels.fir_apply_same(buffer.samples, filt.coefficients)
    return SampleBuffer(filtered, buffer.sample_rate)
