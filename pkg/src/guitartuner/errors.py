"""Exception types shared across the package."""


class TunerError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(TunerError, ValueError):
    """An argument violates an operation's contract."""


class NoSignalError(TunerError):
    """The spectrum is all-zero inside the search band: string not heard."""


class WavFormatError(TunerError, ValueError):
    """The byte stream is not a well-formed RIFF/WAVE container."""


class UnsupportedFormatError(WavFormatError):
    """The WAV file is valid but uses an encoding we do not accept."""


class UnsupportedRateError(WavFormatError):
    """The WAV file's sample rate is not one of the accepted rates."""


class DeviceUnavailableError(TunerError, RuntimeError):
    """No capture device is available."""


class CaptureBusyError(TunerError, RuntimeError):
    """Another capture is already in flight; the device is exclusive."""
