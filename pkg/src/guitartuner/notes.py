"""Equal-temperament note model and the six open-string targets.

String targets are the conventional one-decimal table values (E2 = 82.4 Hz
and so on), not the full-precision equal-temperament results; the difference
is under 0.05 Hz, well below both the 0.5 Hz bin resolution and the 0.5 Hz
audibility threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError

A4_FREQUENCY = 440.0
CENTS_PER_OCTAVE = 1200.0


@dataclass(frozen=True)
class GuitarString:
    """One open string: note name, string number (6 = low E), target Hz."""

    identifier: str
    number: int
    target_frequency: float


OPEN_STRINGS: tuple[GuitarString, ...] = (
    GuitarString("E2", 6, 82.4),
    GuitarString("A2", 5, 110.0),
    GuitarString("D3", 4, 146.8),
    GuitarString("G3", 3, 196.0),
    GuitarString("B3", 2, 246.9),
    GuitarString("E4", 1, 329.6),
)

_BY_IDENTIFIER = {s.identifier: s for s in OPEN_STRINGS}
_BY_NUMBER = {s.number: s for s in OPEN_STRINGS}

# semitone offsets from A4 of the open strings, lowest first
SEMITONES_FROM_A4 = {"E2": -29, "A2": -24, "D3": -19, "G3": -14, "B3": -10, "E4": -5}


def note_frequency(semitones_from_a4: int) -> float:
    """Equal-temperament frequency: 440 * 2^(n/12)."""
    return A4_FREQUENCY * 2.0 ** (semitones_from_a4 / 12.0)


def string_by_id(identifier: str | int) -> GuitarString:
    """Look up a string by note name ("B3") or string number (1-6)."""
    if isinstance(identifier, int):
        if identifier in _BY_NUMBER:
            return _BY_NUMBER[identifier]
        raise InvalidArgumentError(f"unknown string number {identifier}; expected 1-6")
    key = str(identifier).strip().upper()
    if key in _BY_IDENTIFIER:
        return _BY_IDENTIFIER[key]
    if key.isdigit() and int(key) in _BY_NUMBER:
        return _BY_NUMBER[int(key)]
    raise InvalidArgumentError(
        f"unknown string {identifier!r}; expected one of "
        f"{', '.join(_BY_IDENTIFIER)} or a number 1-6"
    )


def string_target(string: GuitarString) -> float:
    """Target frequency of an open string, as tabulated."""
    if string.identifier not in _BY_IDENTIFIER:
        raise InvalidArgumentError(f"unknown string identifier {string.identifier!r}")
    return _BY_IDENTIFIER[string.identifier].target_frequency


def cents_offset(measured: float, reference: float) -> float:
    """Signed distance in cents from reference to measured, 1200 per octave."""
    if measured <= 0 or reference <= 0:
        raise InvalidArgumentError(
            f"frequencies must be positive, got measured={measured}, reference={reference}"
        )
    return CENTS_PER_OCTAVE * math.log2(measured / reference)
