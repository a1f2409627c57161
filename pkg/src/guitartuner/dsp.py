"""Time/frequency fundamentals: sample buffers, magnitude spectra, bin math.

The whole pipeline runs on one-sided magnitude spectra with a bin spacing of
sample_rate / num_samples. No analysis window is applied before the
transform; at the 2 s default frame the 0.5 Hz bins make leakage acceptable
and peak locations are all that matters downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

SPECTRUM_KINDS = ("raw", "normalized", "harmonic_sum")


@dataclass(frozen=True)
class SampleBuffer:
    """Time-domain audio samples plus their sample rate.

    Samples are dimensionless amplitudes, nominally in [-1, 1]. Buffers are
    immutable after construction and safe to share across threads.
    """

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise InvalidArgumentError(f"sample_rate must be positive, got {self.sample_rate}")
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise InvalidArgumentError(f"samples must be one-dimensional, got shape {samples.shape}")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        """Buffer length in seconds."""
        return len(self.samples) / self.sample_rate


@dataclass(frozen=True)
class Spectrum:
    """One-sided magnitude spectrum: non-negative magnitude per bin.

    Bin k holds the magnitude of the frequency component at
    k * bin_resolution Hz.
    """

    magnitudes: np.ndarray
    bin_resolution: float
    kind: str = "raw"

    def __post_init__(self):
        if self.bin_resolution <= 0:
            raise InvalidArgumentError(f"bin_resolution must be positive, got {self.bin_resolution}")
        if self.kind not in SPECTRUM_KINDS:
            raise InvalidArgumentError(f"kind must be one of {SPECTRUM_KINDS}, got {self.kind!r}")
        mags = np.array(self.magnitudes, dtype=np.float64)
        if mags.ndim != 1:
            raise InvalidArgumentError(f"magnitudes must be one-dimensional, got shape {mags.shape}")
        if len(mags) and mags.min() < 0:
            raise InvalidArgumentError("magnitudes must be non-negative")
        mags.flags.writeable = False
        object.__setattr__(self, "magnitudes", mags)

    def __len__(self) -> int:
        return len(self.magnitudes)

    @property
    def frequencies(self) -> np.ndarray:
        """Frequency in Hz of each bin."""
        return np.arange(len(self.magnitudes)) * self.bin_resolution


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs for a detection run.

    The defaults mirror the standard setup: 8 kHz sampling, 2 s capture
    (0.5 Hz bins), fundamental search restricted to 75-500 Hz.
    """

    sample_rate: int = 8000
    capture_duration: float = 2.0
    search_band: tuple[float, float] = (75.0, 500.0)

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise InvalidArgumentError(f"sample_rate must be positive, got {self.sample_rate}")
        n = self.sample_rate * self.capture_duration
        if abs(n - round(n)) > 1e-9 or round(n) < 2:
            raise InvalidArgumentError(
                f"sample_rate x capture_duration must be an integer >= 2, got {n}"
            )
        low, high = self.search_band
        if not (0 <= low < high <= self.sample_rate / 2):
            raise InvalidArgumentError(
                f"search_band must satisfy 0 <= low < high <= Nyquist, got {self.search_band}"
            )

    @property
    def num_samples(self) -> int:
        return round(self.sample_rate * self.capture_duration)


def bin_resolution(sample_rate: float, num_samples: int) -> float:
    """Bin spacing in Hz of an N-point transform: sample_rate / num_samples."""
    if sample_rate <= 0:
        raise InvalidArgumentError(f"sample_rate must be positive, got {sample_rate}")
    if num_samples <= 0:
        raise InvalidArgumentError(f"num_samples must be positive, got {num_samples}")
    return sample_rate / num_samples


def magnitude_spectrum(buffer: SampleBuffer, pad_factor: int = 1) -> Spectrum:
    """One-sided magnitude spectrum of a buffer (kind=raw).

    Returns floor(N/2)+1 bins; bin k is the magnitude of the discrete
    Fourier component at k * sample_rate / N Hz. No window is applied.

    pad_factor > 1 zero-extends the buffer to pad_factor * N samples before
    the transform, interpolating the spectrum onto a grid that many times
    finer; bin_resolution is recomputed from the padded length. The default
    is no padding.
    """
    if len(buffer) == 0:
        raise InvalidArgumentError("cannot take the spectrum of an empty buffer")
    if pad_factor < 1 or int(pad_factor) != pad_factor:
        raise InvalidArgumentError(f"pad_factor must be a positive integer, got {pad_factor}")
    n = len(buffer) * int(pad_factor)
    mags = np.abs(np.fft.rfft(buffer.samples, n=n))
    return Spectrum(mags, bin_resolution(buffer.sample_rate, n), kind="raw")


def normalize(spectrum: Spectrum) -> Spectrum:
    """Scale magnitudes so the peak is 1. All-zero input passes through."""
    peak = spectrum.magnitudes.max() if len(spectrum) else 0.0
    if peak == 0.0:
        return Spectrum(spectrum.magnitudes, spectrum.bin_resolution, kind="normalized")
    return Spectrum(spectrum.magnitudes / peak, spectrum.bin_resolution, kind="normalized")
