"""Local tuning service: session protocol, WebSocket transport, health.

One session per connection. A session is a small state machine
(idle -> recording -> analyzing -> idle); capture is exclusive
process-wide, so a second client starting a test gets a busy rejection
instead of queueing. The protocol core (run_test) is synchronous and fully
testable without a network; the WebSocket endpoint streams its events from
a worker thread so health checks stay responsive during capture.

Wire protocol (JSON text messages, all carrying "v"):
  client -> server: {"v": 1, "type": "select_string", "string": "B3"}
                    {"v": 1, "type": "start_test"}
  server -> client: ack | recording_started | recording_stopped | result
                    | no_signal | busy | error
"""

from __future__ import annotations

import asyncio
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from . import __version__
from .advisor import DEFAULT_CALIBRATION, TurnCalibration, advise
from .audio_io import SoundDeviceCapture, capture, read_wav_file
from .dsp import AnalysisConfig, SampleBuffer, Spectrum, normalize
from .errors import DeviceUnavailableError, NoSignalError, TunerError
from .notes import GuitarString, string_by_id
from .pitch import HarmonicConfig, detect_fundamental

PROTOCOL_VERSION = 1
PREVIEW_MAX_POINTS = 2048
HEALTH_PATH = "/health"
SOCKET_PATH = "/ws"


class SessionStateError(TunerError):
    """A message arrived in a phase where it is not legal."""


@dataclass
class ServiceConfig:
    """How the service acquires signal and renders advice.

    fixture_path switches the service to fixture-input mode: start_test
    reads that WAV instead of touching a capture device, which makes the
    whole protocol testable headless.
    """

    fixture_path: str | Path | None = None
    device: object | None = None
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    harmonic: HarmonicConfig = field(default_factory=HarmonicConfig)
    calibration: TurnCalibration = field(default_factory=lambda: DEFAULT_CALIBRATION)
    static_dir: str | Path | None = None


def _msg(msg_type: str, **fields) -> dict:
    return {"v": PROTOCOL_VERSION, "type": msg_type, **fields}


class TuningSession:
    """Per-connection state machine: idle -> recording -> analyzing -> idle."""

    def __init__(self):
        self.phase = "idle"
        self.selected: GuitarString | None = None
        self.last_result: dict | None = None
        self.history: list[tuple[str, str]] = []

    def _transition(self, to: str) -> None:
        self.history.append((self.phase, to))
        self.phase = to

    def select_string(self, string_id) -> dict:
        if self.phase != "idle":
            raise SessionStateError("cannot change the string while a test is running")
        self.selected = string_by_id(string_id)
        return _msg("ack", string=self.selected.identifier, target=self.selected.target_frequency)

    def begin_recording(self) -> None:
        if self.phase != "idle":
            raise SessionStateError(f"cannot start recording from phase {self.phase}")
        if self.selected is None:
            raise SessionStateError("select a string before starting a test")
        self._transition("recording")

    def begin_analysis(self) -> None:
        if self.phase != "recording":
            raise SessionStateError(f"cannot start analysis from phase {self.phase}")
        self._transition("analyzing")

    def finish(self, result: dict | None = None) -> None:
        if self.phase != "analyzing":
            raise SessionStateError(f"cannot finish from phase {self.phase}")
        if result is not None:
            self.last_result = result
        self._transition("idle")

    def abort(self) -> None:
        """Error recovery: drop back to idle from any phase."""
        if self.phase != "idle":
            self._transition("idle")


def spectrum_preview(spectrum: Spectrum, max_points: int = PREVIEW_MAX_POINTS) -> list[list[float]]:
    """Decimate a spectrum to at most max_points [frequency, magnitude] pairs.

    Max-pools over equal bin groups so peaks survive; magnitudes are
    normalized to peak 1; frequencies increase strictly.
    """
    norm = normalize(spectrum)
    mags = norm.magnitudes
    group = -(-len(mags) // max_points)  # ceil
    points = []
    for start in range(0, len(mags), group):
        stop = min(start + group, len(mags))
        k = start + int(np.argmax(mags[start:stop]))
        points.append([k * norm.bin_resolution, float(mags[k])])
    return points


def _acquire_buffer(config: ServiceConfig) -> SampleBuffer:
    if config.fixture_path is not None:
        return read_wav_file(config.fixture_path)
    return capture(config.analysis.capture_duration, config.analysis, config.device)


def build_result(config: ServiceConfig, string: GuitarString, buffer: SampleBuffer) -> dict:
    """Run detection + advice on a buffer and shape the result message."""
    estimate = detect_fundamental(buffer, config.analysis, config.harmonic)
    advice = advise(string, estimate.fundamental, config.calibration)
    return _msg(
        "result",
        string=string.identifier,
        detected=advice.detected,
        target=advice.target,
        cents=advice.cents,
        degrees=advice.degrees,
        direction=advice.direction,
        clamped=advice.clamped,
        raw_spectrum=spectrum_preview(estimate.raw_spectrum),
        harmonic_sum_spectrum=spectrum_preview(estimate.harmonic_sum_spectrum),
    )


def run_test(session: TuningSession, config: ServiceConfig, slot: threading.Lock, emit) -> None:
    """One full test cycle, emitting protocol events in order.

    Always returns the session to idle. emit is called with each
    server->client message dict as it becomes due.
    """
    if session.phase != "idle":
        emit(_msg("busy", message="a test is already in progress"))
        return
    if session.selected is None:
        emit(_msg("error", message="select a string before starting a test"))
        return
    if not slot.acquire(blocking=False):
        emit(_msg("busy", message="another client is testing a string"))
        return
    try:
        session.begin_recording()
        emit(_msg("recording_started"))
        try:
            buffer = _acquire_buffer(config)
        except (TunerError, OSError) as exc:
            session.abort()
            emit(_msg("error", message=str(exc)))
            return
        session.begin_analysis()
        emit(_msg("recording_stopped"))
        try:
            result = build_result(config, session.selected, buffer)
        except NoSignalError:
            session.finish()
            emit(_msg("no_signal"))
            return
        except TunerError as exc:
            session.abort()
            emit(_msg("error", message=str(exc)))
            return
        session.finish(result)
        emit(result)
    finally:
        slot.release()


def _device_available(config: ServiceConfig) -> bool:
    if config.fixture_path is not None or config.device is not None:
        return True
    try:
        SoundDeviceCapture()
        return True
    except DeviceUnavailableError:
        return False


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    """Build the FastAPI app hosting the protocol, health, and static UI."""
    config = config or ServiceConfig()
    app = FastAPI(title="guitartuner service", version=__version__)
    app.state.config = config
    app.state.test_slot = threading.Lock()
    app.state.device_available = _device_available(config)

    @app.get(HEALTH_PATH)
    def health():
        return {"status": "ok", "version": __version__, "device": app.state.device_available}

    @app.websocket(SOCKET_PATH)
    async def socket(ws: WebSocket):
        await ws.accept()
        session = TuningSession()
        try:
            while True:
                text = await ws.receive_text()
                try:
                    message = json.loads(text)
                except json.JSONDecodeError:
                    await ws.send_json(_msg("error", message="malformed JSON"))
                    continue
                msg_type = message.get("type")
                if msg_type == "select_string":
                    try:
                        ack = session.select_string(message.get("string", ""))
                    except TunerError as exc:
                        await ws.send_json(_msg("error", message=str(exc)))
                    else:
                        await ws.send_json(ack)
                elif msg_type == "start_test":
                    await _run_test_streaming(ws, session, config, app.state.test_slot)
                else:
                    await ws.send_json(_msg("error", message=f"unknown message type {msg_type!r}"))
        except WebSocketDisconnect:
            pass

    if config.static_dir is not None and Path(config.static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(config.static_dir), html=True), name="ui")

    return app


async def _run_test_streaming(ws, session, config, slot) -> None:
    # run the sync protocol core in a thread, forwarding its events as they
    # come so the client sees PLAY before capture starts
    loop = asyncio.get_running_loop()
    queue: asyncio.Queue = asyncio.Queue()
    done = object()

    def emit(message):
        loop.call_soon_threadsafe(queue.put_nowait, message)

    def work():
        try:
            run_test(session, config, slot, emit)
        finally:
            loop.call_soon_threadsafe(queue.put_nowait, done)

    worker = asyncio.create_task(asyncio.to_thread(work))
    while True:
        message = await queue.get()
        if message is done:
            break
        await ws.send_json(message)
    await worker
