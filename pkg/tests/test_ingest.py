"""Strict CSV parsing, serialization round-trips, and BMI derivation."""

from __future__ import annotations

import io
from datetime import date

import pytest

from actidash.ingest import (
    ParseError,
    derive_bmi,
    parse_actigraphy,
    parse_biometrics,
    parse_subjects,
    render_actigraphy_csv,
    render_biometrics_csv,
    render_subjects_csv,
)
from actidash.model import BiometricKind, Gender

from conftest import make_measurement


def _stream(text: str) -> io.BytesIO:
    return io.BytesIO(text.encode("utf-8"))


class TestParseSubjects:
    def test_plain_rows(self):
        subjects = parse_subjects(_stream("subject_id,gender\n84,male\n82,male\n"))
        assert [(s.id, s.gender) for s in subjects] == [
            ("84", Gender.male),
            ("82", Gender.male),
        ]

    def test_gender_case_insensitive(self):
        [s] = parse_subjects(_stream("subject_id,gender\n5,FEMALE\n"))
        assert s.gender is Gender.female

    def test_unknown_gender_carries_line(self):
        with pytest.raises(ParseError) as err:
            parse_subjects(_stream("subject_id,gender\n84,male\n7,other\n"))
        assert err.value.line == 3

    def test_duplicate_id_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_subjects(_stream("subject_id,gender\n84,male\n84,female\n"))
        assert err.value.line == 3
        assert "duplicate" in err.value.message

    def test_malformed_header(self):
        with pytest.raises(ParseError) as err:
            parse_subjects(_stream("id,gender\n84,male\n"))
        assert err.value.line == 1

    def test_crlf_line_endings(self):
        subjects = parse_subjects(_stream("subject_id,gender\r\n84,male\r\n"))
        assert len(subjects) == 1

    def test_non_utf8_rejected(self):
        with pytest.raises(ParseError):
            parse_subjects(io.BytesIO(b"subject_id,gender\n84,m\xffle\n"))


class TestParseActigraphy:
    def test_plain_rows(self):
        epochs = parse_actigraphy(
            _stream(
                "subject_id,timestamp,epoch_seconds,counts\n"
                "84,2015-03-01T10:00:00+03:00,60,0\n"
                "84,2015-03-01T10:01:00+03:00,60,4500\n"
            )
        )
        assert [e.counts for e in epochs] == [0, 4500]
        assert epochs[0].duration_s == 60
        assert epochs[0].start.isoformat() == "2015-03-01T10:00:00+03:00"

    def test_file_order_preserved(self):
        epochs = parse_actigraphy(
            _stream(
                "subject_id,timestamp,epoch_seconds,counts\n"
                "84,2015-03-01T10:01:00+03:00,60,2\n"
                "84,2015-03-01T10:00:00+03:00,60,1\n"
            )
        )
        assert [e.counts for e in epochs] == [2, 1]

    def test_date_only_timestamp_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_actigraphy(
                _stream("subject_id,timestamp,epoch_seconds,counts\n84,2015-03-01,60,10\n")
            )
        assert err.value.line == 2

    def test_naive_timestamp_rejected(self):
        with pytest.raises(ParseError):
            parse_actigraphy(
                _stream(
                    "subject_id,timestamp,epoch_seconds,counts\n"
                    "84,2015-03-01T10:00:00,60,10\n"
                )
            )

    def test_zulu_offset_accepted(self):
        [e] = parse_actigraphy(
            _stream("subject_id,timestamp,epoch_seconds,counts\n84,2015-03-01T07:00:00Z,60,10\n")
        )
        assert e.start.utcoffset().total_seconds() == 0

    @pytest.mark.parametrize("dur", ["0", "-60", "60.0", "+60", ""])
    def test_bad_epoch_seconds(self, dur):
        with pytest.raises(ParseError):
            parse_actigraphy(
                _stream(
                    f"subject_id,timestamp,epoch_seconds,counts\n"
                    f"84,2015-03-01T10:00:00+03:00,{dur},10\n"
                )
            )

    @pytest.mark.parametrize("counts", ["-1", "1.5", "+2", ""])
    def test_bad_counts(self, counts):
        with pytest.raises(ParseError):
            parse_actigraphy(
                _stream(
                    f"subject_id,timestamp,epoch_seconds,counts\n"
                    f"84,2015-03-01T10:00:00+03:00,60,{counts}\n"
                )
            )

    def test_wrong_field_count(self):
        with pytest.raises(ParseError) as err:
            parse_actigraphy(
                _stream("subject_id,timestamp,epoch_seconds,counts\n84,2015-03-01T10:00:00+03:00,60\n")
            )
        assert err.value.line == 2


class TestParseBiometrics:
    def test_plain_row(self):
        [m] = parse_biometrics(_stream("subject_id,date,kind,value\n82,2015-03-01,weight_kg,80.0\n"))
        assert m.subject_id == "82"
        assert m.date == date(2015, 3, 1)
        assert m.kind is BiometricKind.weight_kg
        assert m.value == 80.0

    def test_negative_value_rejected(self):
        with pytest.raises(ParseError):
            parse_biometrics(_stream("subject_id,date,kind,value\n82,2015-03-01,bmi,-1\n"))

    def test_unknown_kind_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_biometrics(
                _stream("subject_id,date,kind,value\n82,2015-03-01,cholesterol,5\n")
            )
        assert "cholesterol" in err.value.message

    @pytest.mark.parametrize("bad_date", ["2015-3-1", "01-03-2015", "2015-03-01T10:00:00", ""])
    def test_bad_date_rejected(self, bad_date):
        with pytest.raises(ParseError):
            parse_biometrics(_stream(f"subject_id,date,kind,value\n82,{bad_date},bmi,20\n"))

    @pytest.mark.parametrize("bad_value", ["nan", "inf", "0", "abc"])
    def test_non_finite_or_zero_value_rejected(self, bad_value):
        with pytest.raises(ParseError):
            parse_biometrics(_stream(f"subject_id,date,kind,value\n82,2015-03-01,bmi,{bad_value}\n"))


class TestRoundTrip:
    def test_subjects_round_trip(self):
        text = "subject_id,gender\n84,male\n5,female\n"
        parsed = parse_subjects(_stream(text))
        assert render_subjects_csv(parsed) == text
        assert parse_subjects(_stream(render_subjects_csv(parsed))) == parsed

    def test_actigraphy_round_trip(self):
        text = (
            "subject_id,timestamp,epoch_seconds,counts\n"
            "84,2015-03-01T10:00:00+03:00,60,0\n"
            "84,2015-03-01T10:01:00+03:00,30,4500\n"
        )
        parsed = parse_actigraphy(_stream(text))
        assert render_actigraphy_csv(parsed) == text
        assert parse_actigraphy(_stream(render_actigraphy_csv(parsed))) == parsed

    def test_biometrics_round_trip(self):
        text = (
            "subject_id,date,kind,value\n"
            "82,2015-03-01,weight_kg,80.0\n"
            "82,2015-03-01,height_m,1.6\n"
        )
        parsed = parse_biometrics(_stream(text))
        assert render_biometrics_csv(parsed) == text
        assert parse_biometrics(_stream(render_biometrics_csv(parsed))) == parsed


class TestDeriveBmi:
    def test_same_day_height_and_weight(self):
        ms = [
            make_measurement("1", "2015-03-01", BiometricKind.weight_kg, 80.0),
            make_measurement("1", "2015-03-01", BiometricKind.height_m, 1.60),
        ]
        out = derive_bmi(ms)
        derived = [m for m in out if m.kind is BiometricKind.bmi]
        assert len(derived) == 1
        assert derived[0].value == 31.25
        assert derived[0].date == date(2015, 3, 1)

    def test_explicit_bmi_never_overwritten(self):
        ms = [
            make_measurement("1", "2015-03-01", BiometricKind.weight_kg, 80.0),
            make_measurement("1", "2015-03-01", BiometricKind.height_m, 1.60),
            make_measurement("1", "2015-03-01", BiometricKind.bmi, 30.0),
        ]
        out = derive_bmi(ms)
        bmi_rows = [m for m in out if m.kind is BiometricKind.bmi]
        assert [m.value for m in bmi_rows] == [30.0]

    def test_carried_forward_height(self):
        # hand-computed fixture: weight 70 on day d, height 1.60 seven days
        # earlier -> bmi = round(70 / 1.60**2, 2) = round(27.34375, 2) = 27.34
        ms = [
            make_measurement("1", "2015-03-01", BiometricKind.height_m, 1.60),
            make_measurement("1", "2015-03-08", BiometricKind.weight_kg, 70.0),
        ]
        out = derive_bmi(ms)
        derived = [m for m in out if m.kind is BiometricKind.bmi]
        assert len(derived) == 1
        assert derived[0].date == date(2015, 3, 8)
        assert derived[0].value == 27.34

    def test_later_height_is_not_used(self):
        ms = [
            make_measurement("1", "2015-03-08", BiometricKind.weight_kg, 70.0),
            make_measurement("1", "2015-03-15", BiometricKind.height_m, 1.60),
        ]
        out = derive_bmi(ms)
        assert not [m for m in out if m.kind is BiometricKind.bmi]

    def test_most_recent_prior_height_wins(self):
        ms = [
            make_measurement("1", "2015-03-01", BiometricKind.height_m, 1.50),
            make_measurement("1", "2015-03-05", BiometricKind.height_m, 1.60),
            make_measurement("1", "2015-03-08", BiometricKind.weight_kg, 70.0),
        ]
        out = derive_bmi(ms)
        [bmi] = [m for m in out if m.kind is BiometricKind.bmi]
        assert bmi.value == 27.34  # uses 1.60, not 1.50

    def test_inputs_preserved_and_order_kept(self):
        ms = [
            make_measurement("1", "2015-03-01", BiometricKind.weight_kg, 80.0),
            make_measurement("1", "2015-03-01", BiometricKind.height_m, 1.60),
        ]
        out = derive_bmi(ms)
        assert out[: len(ms)] == ms

    def test_idempotent(self):
        ms = [
            make_measurement("2", "2015-03-01", BiometricKind.height_m, 1.55),
            make_measurement("2", "2015-03-01", BiometricKind.weight_kg, 60.0),
            make_measurement("2", "2015-03-08", BiometricKind.weight_kg, 61.0),
        ]
        once = derive_bmi(ms)
        assert derive_bmi(once) == once
