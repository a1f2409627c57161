"""Command-line interface: analyze a WAV, tune live, or serve the browser UI.

Exit codes: 0 success, 1 usage or environment errors, 2 no signal detected.
Errors go to stderr; reports go to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .advisor import DEFAULT_CALIBRATION, TuningAdvice, advise, load_calibration
from .audio_io import capture, read_wav
from .dsp import AnalysisConfig, normalize
from .errors import (
    DeviceUnavailableError,
    InvalidArgumentError,
    NoSignalError,
    TunerError,
)
from .notes import string_by_id
from .pitch import PitchEstimate, detect_fundamental

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_SIGNAL = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this CLI reserves 2 for no-signal
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _format_text(advice: TuningAdvice) -> str:
    lines = [
        f"string    {advice.string.identifier} ({advice.string.number})",
        f"detected  {advice.detected:.2f} Hz",
        f"target    {advice.target:.2f} Hz",
        f"offset    {advice.cents:+.1f} cents",
    ]
    if advice.direction == "in_tune":
        lines.append("advice    in tune")
    else:
        turn = "clockwise" if advice.direction == "tighten" else "counter-clockwise"
        note = " [clamped: large correction, retest after turning]" if advice.clamped else ""
        lines.append(f"advice    {advice.direction} {abs(advice.degrees):.1f} deg ({turn}){note}")
    return "\n".join(lines)


def _format_structured(advice: TuningAdvice) -> str:
    return json.dumps(
        {
            "v": 1,
            "string": advice.string.identifier,
            "detected": advice.detected,
            "target": advice.target,
            "cents": advice.cents,
            "degrees": advice.degrees,
            "direction": advice.direction,
            "clamped": advice.clamped,
        }
    )


def _save_spectra(prefix: str, estimate: PitchEstimate) -> None:
    """Write normalized raw and harmonic-sum spectra as two-column text."""
    for suffix, spectrum in (
        ("raw", estimate.raw_spectrum),
        ("harmonic", estimate.harmonic_sum_spectrum),
    ):
        norm = normalize(spectrum)
        lines = (
            f"{k * norm.bin_resolution:.6f} {magnitude:.8f}"
            for k, magnitude in enumerate(norm.magnitudes)
        )
        Path(f"{prefix}.{suffix}.txt").write_text("\n".join(lines) + "\n")


def _load_calibration_arg(path: str | None):
    if path is None:
        return DEFAULT_CALIBRATION
    return load_calibration(path)


def cmd_analyze(args) -> int:
    try:
        string = string_by_id(args.string)
        calibration = _load_calibration_arg(args.calibration)
    except (InvalidArgumentError, OSError) as exc:
        return _fail(str(exc))
    try:
        data = Path(args.input).read_bytes()
    except OSError as exc:
        return _fail(f"cannot read {args.input}: {exc}")
    try:
        buffer = read_wav(data)
        estimate = detect_fundamental(buffer)
    except NoSignalError:
        print("no signal detected", file=sys.stderr)
        return EXIT_NO_SIGNAL
    except TunerError as exc:
        return _fail(str(exc))

    advice = advise(string, estimate.fundamental, calibration)
    if args.save_spectra:
        _save_spectra(args.save_spectra, estimate)
    if args.format == "structured":
        print(_format_structured(advice))
    else:
        print(_format_text(advice))
    return EXIT_OK


def cmd_live(args, device=None) -> int:
    try:
        string = string_by_id(args.string)
        calibration = _load_calibration_arg(args.calibration)
    except (InvalidArgumentError, OSError) as exc:
        return _fail(str(exc))
    analysis = AnalysisConfig()
    cycle = 0
    try:
        while args.cycles is None or cycle < args.cycles:
            cycle += 1
            print("PLAY")
            try:
                buffer = capture(analysis.capture_duration, analysis, device)
            except (DeviceUnavailableError, TunerError) as exc:
                return _fail(str(exc))
            print("STOP")
            try:
                estimate = detect_fundamental(buffer, analysis)
            except NoSignalError:
                print("string not heard - play again")
                continue
            advice = advise(string, estimate.fundamental, calibration)
            print(_format_text(advice))
            print()
    except KeyboardInterrupt:
        pass
    return EXIT_OK


def cmd_serve(args) -> int:
    import signal
    import socket

    from . import service

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.bind, args.port))
    except OSError as exc:
        return _fail(f"cannot bind {args.bind}:{args.port}: {exc}")
    finally:
        probe.close()

    try:
        config = service.ServiceConfig(
            fixture_path=args.fixture,
            calibration=_load_calibration_arg(args.calibration),
            static_dir=args.ui,
        )
    except (InvalidArgumentError, OSError) as exc:
        return _fail(str(exc))

    import uvicorn

    app = service.create_app(config)
    # uvicorn shuts down gracefully on SIGTERM and then re-raises it through
    # the handler that was installed before it ran; exit cleanly instead of
    # dying on the re-raised signal
    signal.signal(signal.SIGTERM, lambda signum, frame: sys.exit(EXIT_OK))
    try:
        uvicorn.run(app, host=args.bind, port=args.port, log_level="warning")
    except KeyboardInterrupt:
        pass
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="guitartuner", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="detect pitch in a WAV file and print advice")
    analyze.add_argument("--input", required=True, help="path to a mono 16-bit PCM WAV file")
    analyze.add_argument("--string", required=True, help="string name (E2..E4) or number (1-6)")
    analyze.add_argument("--format", choices=("text", "structured"), default="text")
    analyze.add_argument("--calibration", help="calibration override file (see README)")
    analyze.add_argument(
        "--save-spectra",
        metavar="PREFIX",
        help="write PREFIX.raw.txt and PREFIX.harmonic.txt (two-column frequency/magnitude)",
    )
    analyze.set_defaults(func=cmd_analyze)

    live = sub.add_parser("live", help="interactive tuning loop against the capture device")
    live.add_argument("--string", required=True, help="string name (E2..E4) or number (1-6)")
    live.add_argument("--calibration", help="calibration override file")
    live.add_argument("--cycles", type=int, help="stop after N cycles (default: run until interrupted)")
    live.set_defaults(func=cmd_live)

    serve = sub.add_parser("serve", help="run the local tuning service and browser UI")
    serve.add_argument("--port", type=int, default=8417)
    serve.add_argument("--bind", default="127.0.0.1")
    serve.add_argument("--fixture", help="fixture-input mode: analyze this WAV instead of capturing")
    serve.add_argument("--calibration", help="calibration override file")
    serve.add_argument("--ui", help="directory of static UI assets to host")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
