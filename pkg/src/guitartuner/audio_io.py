"""Signal ingress: WAV files, device capture, decimation, synthetic plucks.

Everything converges on mono 8000 Hz buffers. WAV input accepts 8000,
16000, and 48000 Hz (the latter two are decimated); 44100 Hz would need
fractional resampling and is rejected outright.
"""

from __future__ import annotations

import math
import struct
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fir
from .dsp import AnalysisConfig, SampleBuffer
from .errors import (
    CaptureBusyError,
    DeviceUnavailableError,
    InvalidArgumentError,
    UnsupportedFormatError,
    UnsupportedRateError,
    WavFormatError,
)

TARGET_SAMPLE_RATE = 8000
ACCEPTED_WAV_RATES = (8000, 16000, 48000)
CAPTURE_FALLBACK_RATE = 48000
MIN_CAPTURE_SECONDS = 0.5
MAX_CAPTURE_SECONDS = 4.0

_PCM_FORMAT = 1
_INT16_SCALE = 32768.0


@dataclass(frozen=True)
class WavDescriptor:
    """Format fields of a parsed WAV file."""

    sample_rate: int
    channels: int
    bits_per_sample: int
    num_frames: int


@dataclass(frozen=True)
class PluckSpec:
    """Synthetic plucked-string model: decaying partials at k * fundamental."""

    fundamental: float
    harmonic_amplitudes: tuple[float, ...]
    decay_time_constant: float = math.inf
    duration: float = 2.0
    sample_rate: int = TARGET_SAMPLE_RATE

    def __post_init__(self):
        object.__setattr__(self, "harmonic_amplitudes", tuple(self.harmonic_amplitudes))
        if self.fundamental <= 0:
            raise InvalidArgumentError(f"fundamental must be positive, got {self.fundamental}")
        amps = self.harmonic_amplitudes
        if not amps or all(a == 0 for a in amps):
            raise InvalidArgumentError("at least one harmonic amplitude must be positive")
        if any(a < 0 for a in amps):
            raise InvalidArgumentError("harmonic amplitudes must be non-negative")
        if self.fundamental * len(amps) >= self.sample_rate / 2:
            raise InvalidArgumentError(
                f"highest partial {self.fundamental * len(amps):g} Hz would alias at "
                f"fs={self.sample_rate}"
            )
        if self.duration <= 0:
            raise InvalidArgumentError(f"duration must be positive, got {self.duration}")
        if self.decay_time_constant <= 0:
            raise InvalidArgumentError(
                f"decay_time_constant must be positive, got {self.decay_time_constant}"
            )


def _parse_wav(data: bytes) -> tuple[WavDescriptor, np.ndarray]:
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise WavFormatError("not a RIFF/WAVE container")

    fmt = None
    frames = None
    offset = 12
    while offset + 8 <= len(data):
        chunk_id = data[offset : offset + 4]
        (chunk_size,) = struct.unpack_from("<I", data, offset + 4)
        body = data[offset + 8 : offset + 8 + chunk_size]
        if len(body) < chunk_size:
            raise WavFormatError(f"truncated {chunk_id!r} chunk")
        if chunk_id == b"fmt ":
            if chunk_size < 16:
                raise WavFormatError("fmt chunk too short")
            tag, channels, rate, _, _, bits = struct.unpack_from("<HHIIHH", body)
            fmt = (tag, channels, rate, bits)
        elif chunk_id == b"data":
            frames = body
        # other chunks are skipped; chunks are word-aligned
        offset += 8 + chunk_size + (chunk_size & 1)

    if fmt is None:
        raise WavFormatError("missing fmt chunk")
    if frames is None:
        raise WavFormatError("missing data chunk")

    tag, channels, rate, bits = fmt
    if tag != _PCM_FORMAT:
        raise UnsupportedFormatError(f"only integer PCM is supported, got format tag {tag}")
    if channels != 1:
        raise UnsupportedFormatError(f"only mono is supported, got {channels} channels")
    if bits != 16:
        raise UnsupportedFormatError(f"only 16-bit samples are supported, got {bits}")
    if rate not in ACCEPTED_WAV_RATES:
        raise UnsupportedRateError(
            f"unsupported sample rate {rate} Hz; accepted rates: "
            + ", ".join(str(r) for r in ACCEPTED_WAV_RATES)
        )

    samples = np.frombuffer(frames[: len(frames) // 2 * 2], dtype="<i2").astype(np.float64)
    descriptor = WavDescriptor(rate, channels, bits, len(samples))
    return descriptor, samples / _INT16_SCALE


def read_wav(data: bytes) -> SampleBuffer:
    """Decode mono 16-bit PCM WAV bytes into an 8000 Hz buffer.

    16000 and 48000 Hz input is decimated by 2 and 6 respectively.
    """
    descriptor, samples = _parse_wav(data)
    buffer = SampleBuffer(samples, descriptor.sample_rate)
    if descriptor.sample_rate != TARGET_SAMPLE_RATE:
        buffer = decimate(buffer, descriptor.sample_rate // TARGET_SAMPLE_RATE)
    return buffer


def read_wav_file(path: str | Path) -> SampleBuffer:
    return read_wav(Path(path).read_bytes())


def write_wav(buffer: SampleBuffer) -> bytes:
    """Encode a buffer as mono 16-bit PCM WAV bytes."""
    quantized = np.clip(np.round(buffer.samples * _INT16_SCALE), -32768, 32767).astype("<i2")
    frames = quantized.tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(frames),
        b"WAVE",
        b"fmt ",
        16,
        _PCM_FORMAT,
        1,
        buffer.sample_rate,
        buffer.sample_rate * 2,
        2,
        16,
        b"data",
        len(frames),
    )
    return header + frames


def write_wav_file(path: str | Path, buffer: SampleBuffer) -> None:
    Path(path).write_bytes(write_wav(buffer))


def decimate(buffer: SampleBuffer, factor: int) -> SampleBuffer:
    """Anti-aliased sample-rate reduction by an integer factor.

    Low-passes at 0.45x the output rate (stopband from 0.48x, >=50 dB) and
    keeps every factor-th sample.
    """
    if factor < 2:
        raise InvalidArgumentError(f"decimation factor must be >= 2, got {factor}")
    if buffer.sample_rate % factor:
        raise InvalidArgumentError(
            f"factor {factor} does not divide the sample rate {buffer.sample_rate}"
        )
    out_rate = buffer.sample_rate // factor
    antialias = fir.design_lowpass(
        cutoff=0.45 * out_rate,
        transition_bandwidth=0.06 * out_rate,
        sample_rate=buffer.sample_rate,
    )
    filtered = fir.apply(antialias, buffer)
    return SampleBuffer(filtered.samples[::factor], out_rate)


def synth_pluck(spec: PluckSpec) -> SampleBuffer:
    """Generate a synthetic pluck: decaying partials, peak-normalized to 1."""
    n = round(spec.duration * spec.sample_rate)
    t = np.arange(n) / spec.sample_rate
    signal = np.zeros(n)
    for k, amplitude in enumerate(spec.harmonic_amplitudes, start=1):
        if amplitude:
            signal += amplitude * np.sin(2.0 * np.pi * k * spec.fundamental * t)
    if math.isfinite(spec.decay_time_constant):
        signal *= np.exp(-t / spec.decay_time_constant)
    peak = np.abs(signal).max()
    if peak > 0:
        signal /= peak
    return SampleBuffer(signal, spec.sample_rate)


class SoundDeviceCapture:
    """Capture from the host's default input device via sounddevice.

    Constructing this raises DeviceUnavailableError when the sounddevice
    package or a default input device is missing.
    """

    def __init__(self):
        try:
            import sounddevice
        except ImportError as exc:
            raise DeviceUnavailableError(
                "the sounddevice package is not installed; live capture is unavailable"
            ) from exc
        self._sd = sounddevice
        try:
            self._sd.query_devices(kind="input")
        except Exception as exc:
            raise DeviceUnavailableError("no default input device found") from exc

    def can_record(self, sample_rate: int) -> bool:
        try:
            self._sd.check_input_settings(samplerate=sample_rate, channels=1)
            return True
        except Exception:
            return False

    def record(self, duration: float, sample_rate: int) -> np.ndarray:
        frames = round(duration * sample_rate)
        recording = self._sd.rec(frames, samplerate=sample_rate, channels=1, dtype="float64")
        self._sd.wait()
        return recording[:, 0]


_capture_lock = threading.Lock()


def capture(
    duration: float,
    analysis: AnalysisConfig = AnalysisConfig(),
    device=None,
) -> SampleBuffer:
    """Record a mono buffer at the analysis rate from a capture device.

    Devices that cannot record at the analysis rate are recorded at
    48000 Hz and decimated. Only one capture may be in flight per process;
    concurrent calls raise CaptureBusyError.
    """
    if not (MIN_CAPTURE_SECONDS <= duration <= MAX_CAPTURE_SECONDS):
        raise InvalidArgumentError(
            f"capture duration must lie in [{MIN_CAPTURE_SECONDS}, {MAX_CAPTURE_SECONDS}] s, "
            f"got {duration}"
        )
    if device is None:
        device = SoundDeviceCapture()

    if not _capture_lock.acquire(blocking=False):
        raise CaptureBusyError("another capture is already in flight")
    try:
        target = analysis.sample_rate
        if device.can_record(target):
            samples = np.asarray(device.record(duration, target), dtype=np.float64)
            buffer = SampleBuffer(samples[: round(duration * target)], target)
        elif device.can_record(CAPTURE_FALLBACK_RATE):
            if CAPTURE_FALLBACK_RATE % target:
                raise UnsupportedRateError(
                    f"cannot decimate {CAPTURE_FALLBACK_RATE} Hz to {target} Hz by an integer factor"
                )
            samples = np.asarray(
                device.record(duration, CAPTURE_FALLBACK_RATE), dtype=np.float64
            )
            raw = SampleBuffer(samples[: round(duration * CAPTURE_FALLBACK_RATE)], CAPTURE_FALLBACK_RATE)
            buffer = decimate(raw, CAPTURE_FALLBACK_RATE // target)
        else:
            raise UnsupportedRateError(
                f"capture device supports neither {target} Hz nor {CAPTURE_FALLBACK_RATE} Hz"
            )
        return buffer
    finally:
        _capture_lock.release()
