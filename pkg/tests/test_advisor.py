import pytest
from hypothesis import given
from hypothesis import strategies as st

from guitartuner.advisor import (
    DEFAULT_RATES,
    TurnCalibration,
    advise,
    load_calibration,
    turn_rate,
)
from guitartuner.errors import InvalidArgumentError
from guitartuner.notes import OPEN_STRINGS, string_by_id

# per-180-degree clockwise frequency change used to build the rate table
TURN_DELTAS_PER_180 = {6: 4.0, 5: 4.5, 4: 5.0, 3: 12.0, 2: 13.5, 1: 15.0}


class TestTurnRate:
    def test_tabulated_rates(self):
        assert turn_rate(string_by_id(6)) == 0.022
        assert turn_rate(string_by_id(2)) == 0.075
        assert turn_rate(string_by_id(1)) == 0.083

    def test_default_rates_monotone_from_low_to_high_string(self):
        ordered = [DEFAULT_RATES[n] for n in (6, 5, 4, 3, 2, 1)]
        assert ordered == sorted(ordered)
        assert all(rate > 0 for rate in ordered)


class TestAdvise:
    def test_b_string_sharp_by_table_amount(self):
        advice = advise(string_by_id("B3"), detected=260.4)
        assert advice.degrees == pytest.approx(-180.0)
        assert advice.direction == "loosen"
        assert not advice.clamped

    def test_exactly_in_tune(self):
        advice = advise(string_by_id("E2"), detected=82.4)
        assert advice.degrees == 0.0
        assert advice.direction == "in_tune"

    def test_low_e_flat_by_four(self):
        advice = advise(string_by_id("E2"), detected=78.4)
        assert advice.degrees == pytest.approx(181.8, abs=0.1)
        assert advice.direction == "tighten"

    def test_within_threshold_is_in_tune(self):
        for delta in (-0.5, -0.2, 0.0, 0.3, 0.5):
            advice = advise(string_by_id("G3"), detected=196.0 + delta)
            assert advice.direction == "in_tune"
            assert advice.degrees == 0.0

    def test_clamped_beyond_two_turns(self):
        # 40 Hz flat on the B string: 40 / 0.075 = 533 degrees, not clamped;
        # 80 Hz flat: 1066 degrees, clamped to 720
        moderate = advise(string_by_id("B3"), detected=246.9 - 40.0)
        assert not moderate.clamped
        extreme = advise(string_by_id("B3"), detected=246.9 - 80.0)
        assert extreme.clamped
        assert extreme.degrees == 720.0

    def test_nonpositive_detected_rejected(self):
        with pytest.raises(InvalidArgumentError):
            advise(string_by_id("E2"), detected=0.0)

    def test_antisymmetry(self):
        for string in OPEN_STRINGS:
            target = string.target_frequency
            for delta in (0.6, 2.0, 10.0):
                up = advise(string, detected=target + delta)
                down = advise(string, detected=target - delta)
                assert up.degrees == pytest.approx(-down.degrees, abs=1e-9)

    def test_table_roundtrip_180_degrees(self):
        for string in OPEN_STRINGS:
            delta = TURN_DELTAS_PER_180[string.number]
            advice = advise(string, detected=string.target_frequency - delta)
            assert abs(advice.degrees - 180.0) <= 18.0  # 10% slack for table rounding

    @given(st.sampled_from(range(1, 7)), st.floats(0.51, 15.0))
    def test_monotone_in_offset(self, number, delta):
        string = string_by_id(number)
        target = string.target_frequency
        smaller = advise(string, detected=target - delta)
        larger = advise(string, detected=target - delta - 0.5)
        if not larger.clamped:
            assert abs(larger.degrees) > abs(smaller.degrees)

    def test_sign_convention(self):
        # flat string -> positive degrees (clockwise tightening)
        advice = advise(string_by_id("D3"), detected=140.0)
        assert advice.degrees > 0
        assert advice.direction == "tighten"

    def test_cents_field(self):
        advice = advise(string_by_id("A2"), detected=110.0)
        assert advice.cents == 0.0


class TestCalibration:
    def test_custom_rates(self):
        calibration = TurnCalibration({6: 0.03, 5: 0.025, 4: 0.028, 3: 0.067, 2: 0.075, 1: 0.083})
        assert turn_rate(string_by_id(6), calibration) == 0.03

    def test_rejects_bad_string_number(self):
        with pytest.raises(InvalidArgumentError):
            TurnCalibration({9: 0.05})

    def test_rejects_nonpositive_rate(self):
        with pytest.raises(InvalidArgumentError):
            TurnCalibration({6: 0.0})

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "calibration.txt"
        path.write_text("# my guitar\n6 = 0.030\n2=0.08\n\n")
        calibration = load_calibration(path)
        assert calibration.rate_for(6) == 0.030
        assert calibration.rate_for(2) == 0.08
        assert calibration.rate_for(1) == DEFAULT_RATES[1]  # unlisted keeps default

    def test_load_rejects_garbage(self, tmp_path):
        path = tmp_path / "calibration.txt"
        path.write_text("six = fast\n")
        with pytest.raises(InvalidArgumentError):
            load_calibration(path)

    def test_load_rejects_unknown_string(self, tmp_path):
        path = tmp_path / "calibration.txt"
        path.write_text("7 = 0.05\n")
        with pytest.raises(InvalidArgumentError):
            load_calibration(path)

    def test_advise_uses_calibration(self):
        calibration = TurnCalibration({**DEFAULT_RATES, 6: 0.044})
        advice = advise(string_by_id(6), detected=78.4, calibration=calibration)
        assert advice.degrees == pytest.approx(4.0 / 0.044)
