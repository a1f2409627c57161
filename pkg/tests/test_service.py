import itertools
import json
import threading

import numpy as np
import pytest
from fastapi.testclient import TestClient

from guitartuner.audio_io import PluckSpec, synth_pluck, write_wav_file
from guitartuner.dsp import SampleBuffer, Spectrum
from guitartuner.errors import InvalidArgumentError
from guitartuner.pitch import detect_fundamental
from guitartuner.service import (
    ServiceConfig,
    SessionStateError,
    TuningSession,
    build_result,
    create_app,
    run_test,
    spectrum_preview,
)


@pytest.fixture
def flat_e2_wav(tmp_path):
    # string 6 flat by 4 Hz; 2.5 s so 78.4 Hz lands exactly on the padded grid
    path = tmp_path / "flat_e2.wav"
    write_wav_file(path, synth_pluck(PluckSpec(78.4, (1.0, 0.6, 0.3), 0.9, 2.5, 8000)))
    return path


@pytest.fixture
def silence_wav(tmp_path):
    path = tmp_path / "silence.wav"
    write_wav_file(path, SampleBuffer(np.zeros(16000), 8000))
    return path


def collect_events(config, selection="E2"):
    session = TuningSession()
    if selection is not None:
        session.select_string(selection)
    events = []
    run_test(session, config, threading.Lock(), events.append)
    return session, events


class TestSessionMachine:
    def test_select_echoes_target(self):
        session = TuningSession()
        ack = session.select_string("B3")
        assert ack["type"] == "ack"
        assert ack["string"] == "B3"
        assert ack["target"] == 246.9

    def test_select_unknown_rejected(self):
        with pytest.raises(InvalidArgumentError):
            TuningSession().select_string("Z9")

    def test_select_during_test_rejected(self):
        session = TuningSession()
        session.select_string("E2")
        session.begin_recording()
        with pytest.raises(SessionStateError):
            session.select_string("B3")
        assert session.selected.identifier == "E2"

    def test_happy_path_transitions(self):
        session = TuningSession()
        session.select_string("E2")
        session.begin_recording()
        session.begin_analysis()
        session.finish({"type": "result"})
        assert session.phase == "idle"
        assert session.history == [
            ("idle", "recording"),
            ("recording", "analyzing"),
            ("analyzing", "idle"),
        ]

    def test_illegal_transitions_rejected(self):
        session = TuningSession()
        with pytest.raises(SessionStateError):
            session.begin_analysis()
        with pytest.raises(SessionStateError):
            session.finish()
        with pytest.raises(SessionStateError):
            session.begin_recording()  # no string selected

    def test_exhaustive_small_traces(self, flat_e2_wav):
        # every interleaving of client messages keeps transitions inside the
        # idle -> recording -> analyzing -> idle cycle
        config = ServiceConfig(fixture_path=flat_e2_wav)
        legal = {("idle", "recording"), ("recording", "analyzing"), ("analyzing", "idle")}
        alphabet = ("select_valid", "select_invalid", "start")
        for length in (1, 2, 3):
            for trace in itertools.product(alphabet, repeat=length):
                session = TuningSession()
                for action in trace:
                    if action == "select_valid":
                        session.select_string("E2")
                    elif action == "select_invalid":
                        with pytest.raises(InvalidArgumentError):
                            session.select_string("nope")
                    else:
                        run_test(session, config, threading.Lock(), lambda _: None)
                    assert session.phase == "idle"  # every op leaves the session settled
                assert set(session.history) <= legal


class TestRunTest:
    def test_event_order_and_result(self, flat_e2_wav):
        config = ServiceConfig(fixture_path=flat_e2_wav)
        session, events = collect_events(config)
        assert [e["type"] for e in events] == ["recording_started", "recording_stopped", "result"]
        result = events[-1]
        assert result["string"] == "E2"
        assert result["direction"] == "tighten"
        assert result["degrees"] == pytest.approx(181.8, abs=2.0)
        assert session.phase == "idle"
        assert session.last_result == result

    def test_no_string_selected_is_error(self, flat_e2_wav):
        config = ServiceConfig(fixture_path=flat_e2_wav)
        _, events = collect_events(config, selection=None)
        assert [e["type"] for e in events] == ["error"]

    def test_silence_emits_no_signal(self, silence_wav):
        config = ServiceConfig(fixture_path=silence_wav)
        session, events = collect_events(config)
        assert [e["type"] for e in events] == [
            "recording_started",
            "recording_stopped",
            "no_signal",
        ]
        assert session.phase == "idle"

    def test_slot_contention_is_busy(self, flat_e2_wav):
        config = ServiceConfig(fixture_path=flat_e2_wav)
        session = TuningSession()
        session.select_string("E2")
        slot = threading.Lock()
        slot.acquire()
        events = []
        run_test(session, config, slot, events.append)
        assert [e["type"] for e in events] == ["busy"]
        assert session.phase == "idle"

    def test_missing_fixture_is_error_event(self, tmp_path):
        config = ServiceConfig(fixture_path=tmp_path / "gone.wav")
        session, events = collect_events(config)
        types = [e["type"] for e in events]
        assert types == ["recording_started", "error"]
        assert session.phase == "idle"

    def test_result_matches_direct_pipeline(self, flat_e2_wav):
        # the service adds no numeric transformation
        from guitartuner.advisor import advise
        from guitartuner.audio_io import read_wav_file
        from guitartuner.notes import string_by_id

        config = ServiceConfig(fixture_path=flat_e2_wav)
        _, events = collect_events(config)
        result = events[-1]
        buffer = read_wav_file(flat_e2_wav)
        estimate = detect_fundamental(buffer, config.analysis, config.harmonic)
        advice = advise(string_by_id("E2"), estimate.fundamental)
        assert result["detected"] == advice.detected
        assert result["cents"] == advice.cents
        assert result["degrees"] == advice.degrees
        assert result["direction"] == advice.direction


class TestSpectrumPreview:
    def test_bounded_and_monotone(self):
        rng = np.random.default_rng(5)
        spectrum = Spectrum(rng.uniform(0, 3, 32001), 0.125)
        preview = spectrum_preview(spectrum)
        assert len(preview) <= 2048
        freqs = [point[0] for point in preview]
        assert freqs == sorted(freqs)
        assert max(point[1] for point in preview) == pytest.approx(1.0)

    def test_peak_survives_pooling(self):
        mags = np.zeros(10000)
        mags[7777] = 5.0
        preview = spectrum_preview(Spectrum(mags, 0.5))
        peak_point = max(preview, key=lambda point: point[1])
        assert peak_point[0] == 7777 * 0.5
        assert peak_point[1] == 1.0

    def test_short_spectrum_passes_through(self):
        preview = spectrum_preview(Spectrum(np.array([1.0, 2.0, 4.0]), 1.0))
        assert preview == [[0.0, 0.25], [1.0, 0.5], [2.0, 1.0]]


class TestWebSocketProtocol:
    def test_full_protocol_flow(self, flat_e2_wav):
        app = create_app(ServiceConfig(fixture_path=flat_e2_wav))
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.send_text(json.dumps({"v": 1, "type": "select_string", "string": "E2"}))
                ack = ws.receive_json()
                assert ack["type"] == "ack"
                assert ack["target"] == 82.4
                ws.send_text(json.dumps({"v": 1, "type": "start_test"}))
                types = [ws.receive_json()["type"] for _ in range(3)]
                assert types == ["recording_started", "recording_stopped", "result"]

    def test_selection_after_result_is_legal(self, flat_e2_wav):
        app = create_app(ServiceConfig(fixture_path=flat_e2_wav))
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.send_text(json.dumps({"v": 1, "type": "select_string", "string": "E2"}))
                ws.receive_json()
                ws.send_text(json.dumps({"v": 1, "type": "start_test"}))
                for _ in range(3):
                    ws.receive_json()
                ws.send_text(json.dumps({"v": 1, "type": "select_string", "string": "B3"}))
                assert ws.receive_json()["string"] == "B3"

    def test_unknown_type_is_error(self, flat_e2_wav):
        app = create_app(ServiceConfig(fixture_path=flat_e2_wav))
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.send_text(json.dumps({"v": 1, "type": "mystery"}))
                assert ws.receive_json()["type"] == "error"

    def test_malformed_json_is_error(self, flat_e2_wav):
        app = create_app(ServiceConfig(fixture_path=flat_e2_wav))
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.send_text("{nope")
                assert ws.receive_json()["type"] == "error"

    def test_start_without_selection_is_error(self, flat_e2_wav):
        app = create_app(ServiceConfig(fixture_path=flat_e2_wav))
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.send_text(json.dumps({"v": 1, "type": "start_test"}))
                assert ws.receive_json()["type"] == "error"

    def test_all_messages_versioned(self, flat_e2_wav):
        app = create_app(ServiceConfig(fixture_path=flat_e2_wav))
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.send_text(json.dumps({"v": 1, "type": "select_string", "string": "E2"}))
                assert ws.receive_json()["v"] == 1
                ws.send_text(json.dumps({"v": 1, "type": "start_test"}))
                for _ in range(3):
                    assert ws.receive_json()["v"] == 1


class TestHealth:
    def test_health_reports_ok_and_device_flag(self, flat_e2_wav):
        app = create_app(ServiceConfig(fixture_path=flat_e2_wav))
        with TestClient(app) as client:
            body = client.get("/health").json()
            assert body["status"] == "ok"
            assert body["device"] is True  # fixture mode counts as a signal source

    def test_health_without_any_source(self):
        app = create_app(ServiceConfig())
        with TestClient(app) as client:
            body = client.get("/health").json()
            assert body["status"] == "ok"
            assert isinstance(body["device"], bool)
