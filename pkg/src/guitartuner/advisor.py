"""Turns a detected/target frequency pair into peg-turn advice.

Each string has a calibration constant in Hz per degree of peg turn,
measured per string because string materials differ. Degrees of turn are
the frequency deficit divided by that rate; positive degrees mean turn
clockwise (tighten, raise pitch). Suggestions are clamped to two full
turns since the linear rate model is only a local approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidArgumentError
from .notes import GuitarString, cents_offset, string_target

IN_TUNE_THRESHOLD_HZ = 0.5
MAX_TURN_DEGREES = 720.0

# Hz per degree of peg turn, keyed by string number (6 = low E)
DEFAULT_RATES = {6: 0.022, 5: 0.025, 4: 0.028, 3: 0.067, 2: 0.075, 1: 0.083}


@dataclass(frozen=True)
class TurnCalibration:
    """Per-string Hz-per-degree rates; replaceable for other guitars."""

    rates: dict[int, float] = field(default_factory=lambda: dict(DEFAULT_RATES))

    def __post_init__(self):
        for number, rate in self.rates.items():
            if number not in DEFAULT_RATES:
                raise InvalidArgumentError(f"unknown string number {number}; expected 1-6")
            if rate <= 0:
                raise InvalidArgumentError(f"rate for string {number} must be positive, got {rate}")

    def rate_for(self, number: int) -> float:
        if number not in self.rates:
            raise InvalidArgumentError(f"no calibration rate for string number {number}")
        return self.rates[number]


DEFAULT_CALIBRATION = TurnCalibration()


@dataclass(frozen=True)
class TuningAdvice:
    """Full advice record for one detection: offsets, turn angle, direction."""

    string: GuitarString
    detected: float
    target: float
    cents: float
    degrees: float
    direction: str  # tighten | loosen | in_tune
    clamped: bool


def turn_rate(string: GuitarString, calibration: TurnCalibration = DEFAULT_CALIBRATION) -> float:
    """Hz of pitch change per degree of peg turn for this string."""
    return calibration.rate_for(string.number)


def advise(
    string: GuitarString,
    detected: float,
    calibration: TurnCalibration = DEFAULT_CALIBRATION,
) -> TuningAdvice:
    """Compute signed peg-turn advice to bring `detected` to the target.

    Within 0.5 Hz of the target the string is reported in tune with zero
    degrees; beyond that, degrees = (target - detected) / rate, clamped to
    +/-720 with the clamped flag set.
    """
    if detected <= 0:
        raise InvalidArgumentError(f"detected frequency must be positive, got {detected}")
    target = string_target(string)
    delta = target - detected
    cents = cents_offset(detected, target)

    if abs(delta) <= IN_TUNE_THRESHOLD_HZ:
        return TuningAdvice(string, detected, target, cents, 0.0, "in_tune", False)

    degrees = delta / turn_rate(string, calibration)
    clamped = abs(degrees) > MAX_TURN_DEGREES
    if clamped:
        degrees = MAX_TURN_DEGREES if degrees > 0 else -MAX_TURN_DEGREES
    direction = "tighten" if delta > 0 else "loosen"
    return TuningAdvice(string, detected, target, cents, degrees, direction, clamped)


def load_calibration(path: str | Path) -> TurnCalibration:
    """Read a calibration override file.

    Grammar: one `string_number = hz_per_degree` pair per line, string
    numbers 1-6; blank lines and `#` comments ignored. Strings not listed
    keep their default rate.
    """
    rates = dict(DEFAULT_RATES)
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise InvalidArgumentError(
                f"{path}:{lineno}: expected 'string_number = rate', got {line!r}"
            )
        key, _, value = stripped.partition("=")
        try:
            number = int(key.strip())
            rate = float(value.strip())
        except ValueError:
            raise InvalidArgumentError(
                f"{path}:{lineno}: expected 'string_number = rate', got {line!r}"
            ) from None
        if number not in DEFAULT_RATES:
            raise InvalidArgumentError(
                f"{path}:{lineno}: unknown string number {number}; expected 1-6"
            )
        if rate <= 0:
            raise InvalidArgumentError(f"{path}:{lineno}: rate must be positive, got {rate}")
        rates[number] = rate
    return TurnCalibration(rates)
