"""Fundamental-frequency detection via harmonic summation.

A plucked string puts energy at integer multiples of its fundamental, and
the raw spectral peak is often the second partial rather than the first.
Decimating the magnitude spectrum by 2 and by 3 drops those harmonics onto
the fundamental's bin, so adding the decimated copies to the original
spectrum reinforces only the true fundamental. The argmax of that sum,
restricted to the plausible fundamental band, is the detected pitch.

Decimation here operates on spectrum bins, not time samples: bin k of the
factor-m copy reads bin k*m of the source, and the tail is zero-padded so
all copies keep the original length.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import fir, kernels
from .dsp import AnalysisConfig, SampleBuffer, Spectrum, magnitude_spectrum, normalize
from .errors import InvalidArgumentError, NoSignalError

MIN_BUFFER_SECONDS = 0.5
MAX_BUFFER_SECONDS = 4.0

# Transform padding used by detect_fundamental. Open-string fundamentals
# rarely sit on the coarse bin grid, and bin decimation reads its copies at
# exact integer bins, so a misaligned fundamental's harmonics can miss their
# decimated slots entirely (the D string at a 0.5 Hz grid loses ~1/3 of
# octave-trap cases). Interpolating the spectrum onto a 4x finer grid
# realigns the harmonic copies; the resolution is reported honestly.
SPECTRUM_PAD_FACTOR = 4


@dataclass(frozen=True)
class HarmonicConfig:
    """How the harmonic sum is built and whether the bandpass runs first."""

    downsample_factors: tuple[int, ...] = (2, 3)
    use_filter: bool = True

    def __post_init__(self):
        object.__setattr__(self, "downsample_factors", tuple(self.downsample_factors))
        previous = 1
        for factor in self.downsample_factors:
            if factor < 2:
                raise InvalidArgumentError(f"downsample factors must be >= 2, got {factor}")
            if factor <= previous:
                raise InvalidArgumentError(
                    f"downsample factors must be strictly increasing, got {self.downsample_factors}"
                )
            previous = factor


@dataclass(frozen=True)
class PitchEstimate:
    """Detected fundamental plus the spectra it was read from."""

    fundamental: float
    peak_bin: int
    bin_resolution: float
    raw_spectrum: Spectrum
    harmonic_sum_spectrum: Spectrum


def downsample_spectrum(spectrum: Spectrum, factor: int) -> Spectrum:
    """Bin-decimate a spectrum, zero-padded to keep its length."""
    if factor < 2:
        raise InvalidArgumentError(f"factor must be >= 2, got {factor}")
    out = np.zeros(len(spectrum))
    kept = -(-len(spectrum) // factor)  # ceil
    out[:kept] = spectrum.magnitudes[::factor]
    return Spectrum(out, spectrum.bin_resolution, kind=spectrum.kind)


def harmonic_sum(spectrum: Spectrum, config: HarmonicConfig = HarmonicConfig()) -> Spectrum:
    """Element-wise sum of a spectrum and its decimated copies."""
    if len(spectrum) == 0:
        raise InvalidArgumentError("cannot harmonic-sum an empty spectrum")
    summed = kernels.harmonic_sum_accumulate(spectrum.magnitudes, config.downsample_factors)
    return Spectrum(summed, spectrum.bin_resolution, kind="harmonic_sum")


@lru_cache(maxsize=4)
def _default_bandpass(sample_rate: int) -> fir.FirFilter:
    return fir.design_bandpass(fir.FilterSpec(sample_rate=sample_rate))


# Relative band within which two harmonic-sum values count as tied. A pure
# sinusoid ties its own bin with the subharmonic bin that reads it through
# decimation (both sum to the same value in exact arithmetic), and floating
# dust must not decide between them.
_TIE_RTOL = 1e-9


def _band_argmax(summed: np.ndarray, raw: np.ndarray) -> int:
    """Index of the strongest harmonic-sum bin within the search band.

    Near-ties are resolved by the larger raw magnitude (a candidate that is
    actually present in the signal beats a subharmonic alias), then by the
    lower bin, since octave errors are upward.
    """
    peak = summed.max()
    tied = np.flatnonzero(summed >= peak * (1.0 - _TIE_RTOL))
    if len(tied) == 1:
        return int(tied[0])
    best_raw = raw[tied].max()
    supported = tied[raw[tied] >= best_raw * (1.0 - _TIE_RTOL)]
    return int(supported[0])


def detect_fundamental(
    buffer: SampleBuffer,
    analysis: AnalysisConfig = AnalysisConfig(),
    harmonic: HarmonicConfig = HarmonicConfig(),
) -> PitchEstimate:
    """Run the detection pipeline on one plucked-string buffer.

    Pipeline: optional bandpass -> magnitude spectrum -> peak normalization
    -> harmonic sum -> argmax over bins inside the search band, with
    near-ties resolved by raw support and then toward the lowest bin.

    Raises NoSignalError when the summed spectrum is all-zero inside the
    search band (nothing was heard).
    """
    if buffer.sample_rate != analysis.sample_rate:
        raise InvalidArgumentError(
            f"buffer is at {buffer.sample_rate} Hz but analysis expects {analysis.sample_rate} Hz"
        )
    if not (MIN_BUFFER_SECONDS <= buffer.duration <= MAX_BUFFER_SECONDS):
        raise InvalidArgumentError(
            f"buffer duration must lie in [{MIN_BUFFER_SECONDS}, {MAX_BUFFER_SECONDS}] s, "
            f"got {buffer.duration:.3f} s"
        )

    signal = buffer
    if harmonic.use_filter:
        signal = fir.apply(_default_bandpass(buffer.sample_rate), buffer)

    raw = magnitude_spectrum(signal, pad_factor=SPECTRUM_PAD_FACTOR)
    summed = harmonic_sum(normalize(raw), harmonic)

    low, high = analysis.search_band
    resolution = summed.bin_resolution
    first_bin = int(np.ceil(low / resolution))
    last_bin = int(np.floor(high / resolution))
    band = summed.magnitudes[first_bin : last_bin + 1]
    if len(band) == 0 or band.max() == 0.0:
        raise NoSignalError(
            f"no signal detected in the {low:g}-{high:g} Hz search band"
        )

    peak_bin = first_bin + _band_argmax(band, raw.magnitudes[first_bin : last_bin + 1])
    return PitchEstimate(
        fundamental=peak_bin * resolution,
        peak_bin=peak_bin,
        bin_resolution=resolution,
        raw_spectrum=raw,
        harmonic_sum_spectrum=summed,
    )
