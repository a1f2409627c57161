"""Guitar tuning toolkit.

Detection chain: bandpass FIR filtering, magnitude spectrum, harmonic-sum
fundamental detection, equal-temperament comparison, and peg-turn advice.
Ships as a library, a CLI (`guitartuner`), a local WebSocket service, and a
browser tuning UI.
"""

from .advisor import (
    DEFAULT_CALIBRATION,
    TuningAdvice,
    TurnCalibration,
    advise,
    load_calibration,
    turn_rate,
)
from .audio_io import (
    PluckSpec,
    capture,
    decimate,
    read_wav,
    read_wav_file,
    synth_pluck,
    write_wav,
    write_wav_file,
)
from .dsp import (
    AnalysisConfig,
    SampleBuffer,
    Spectrum,
    bin_resolution,
    magnitude_spectrum,
    normalize,
)
from .errors import (
    CaptureBusyError,
    DeviceUnavailableError,
    InvalidArgumentError,
    NoSignalError,
    TunerError,
    UnsupportedFormatError,
    UnsupportedRateError,
    WavFormatError,
)
from .fir import FilterSpec, FirFilter, design_bandpass, design_lowpass, frequency_response
from .notes import (
    OPEN_STRINGS,
    GuitarString,
    cents_offset,
    note_frequency,
    string_by_id,
    string_target,
)
from .pitch import (
    HarmonicConfig,
    PitchEstimate,
    detect_fundamental,
    downsample_spectrum,
    harmonic_sum,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "CaptureBusyError",
    "DEFAULT_CALIBRATION",
    "DeviceUnavailableError",
    "FilterSpec",
    "FirFilter",
    "GuitarString",
    "HarmonicConfig",
    "InvalidArgumentError",
    "NoSignalError",
    "OPEN_STRINGS",
    "PitchEstimate",
    "PluckSpec",
    "SampleBuffer",
    "Spectrum",
    "TunerError",
    "TuningAdvice",
    "TurnCalibration",
    "UnsupportedFormatError",
    "UnsupportedRateError",
    "WavFormatError",
    "advise",
    "bin_resolution",
    "capture",
    "cents_offset",
    "decimate",
    "design_bandpass",
    "design_lowpass",
    "detect_fundamental",
    "downsample_spectrum",
    "frequency_response",
    "harmonic_sum",
    "load_calibration",
    "magnitude_spectrum",
    "normalize",
    "note_frequency",
    "read_wav",
    "read_wav_file",
    "string_by_id",
    "string_target",
    "synth_pluck",
    "turn_rate",
    "write_wav",
    "write_wav_file",
    "__version__",
]
