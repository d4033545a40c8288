"""Configuration parsing and its effect on the pipeline."""

from __future__ import annotations

import io
from datetime import timedelta, timezone
from zoneinfo import ZoneInfo

import pytest
from fastapi.testclient import TestClient

from actidash.config import (
    DEFAULT_CONFIG,
    config_dict,
    format_timezone,
    parse_config_text,
    parse_timezone,
    parse_weekend_days,
)
from actidash.ingest import parse_actigraphy, parse_biometrics, parse_subjects
from actidash.service import build_snapshot, create_app


class TestParseTimezone:
    def test_fixed_offsets(self):
        assert parse_timezone("+03:00") == timezone(timedelta(hours=3))
        assert parse_timezone("-05:30") == timezone(-timedelta(hours=5, minutes=30))

    def test_named_zone(self):
        assert parse_timezone("Asia/Qatar") == ZoneInfo("Asia/Qatar")

    def test_bad_zone(self):
        with pytest.raises(ValueError):
            parse_timezone("3am")

    def test_format_round_trip(self):
        assert format_timezone(parse_timezone("+03:00")) == "+03:00"
        assert format_timezone(parse_timezone("-05:30")) == "-05:30"
        assert format_timezone(parse_timezone("Asia/Qatar")) == "Asia/Qatar"


class TestParseWeekendDays:
    def test_names_to_numbers(self):
        assert parse_weekend_days("fri,sat") == frozenset({4, 5})
        assert parse_weekend_days("SAT, Sun") == frozenset({5, 6})

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            parse_weekend_days("fri,saturday")


class TestParseConfigText:
    def test_defaults_when_empty(self):
        assert parse_config_text("") == DEFAULT_CONFIG

    def test_comments_and_blanks_ignored(self):
        cfg = parse_config_text("# a comment\n\nflags.epsilon_hours=0.2\n")
        assert cfg.epsilon_hours == 0.2

    def test_all_keys(self):
        cfg = parse_config_text(
            "cutpoints.light_cpm=50\n"
            "cutpoints.moderate_cpm=1000\n"
            "cutpoints.vigorous_cpm=2000\n"
            "calendar.timezone=+02:00\n"
            "calendar.weekend_days=sat,sun\n"
            "flags.epsilon_hours=0.25\n"
            "rules.weekend_ratio=0.5\n"
            "http.cors_allow_all=false\n"
        )
        assert cfg.cutpoints.light_cpm == 50.0
        assert cfg.cutpoints.vigorous_cpm == 2000.0
        assert cfg.calendar.timezone == timezone(timedelta(hours=2))
        assert cfg.calendar.weekend_days == frozenset({5, 6})
        assert cfg.epsilon_hours == 0.25
        assert cfg.weekend_ratio == 0.5
        assert cfg.cors_allow_all is False

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError, match="unknown config keys"):
            parse_config_text("cutpoints.light=100\n")

    def test_bad_number_rejected(self):
        with pytest.raises(ValueError, match="not a number"):
            parse_config_text("flags.epsilon_hours=lots\n")

    def test_bad_cutpoint_order_rejected(self):
        with pytest.raises(ValueError):
            parse_config_text("cutpoints.light_cpm=5000\n")

    def test_missing_equals_rejected(self):
        with pytest.raises(ValueError, match="key=value"):
            parse_config_text("just words\n")

    def test_config_dict_echo(self):
        assert config_dict(DEFAULT_CONFIG) == {
            "cutpoints": {"light_cpm": 100.0, "moderate_cpm": 2296.0, "vigorous_cpm": 4012.0},
            "calendar": {"timezone": "+03:00", "weekend_days": ["fri", "sat"]},
            "flags": {"epsilon_hours": 0.1},
            "rules": {"weekend_ratio": 0.8},
        }


class TestConfigDrivesPipeline:
    def test_cutpoints_change_classification(self):
        subjects = parse_subjects(io.BytesIO(b"subject_id,gender\n1,male\n"))
        epochs = parse_actigraphy(
            io.BytesIO(
                b"subject_id,timestamp,epoch_seconds,counts\n"
                b"1,2015-03-02T10:00:00+03:00,60,500\n"
            )
        )
        measurements = parse_biometrics(io.BytesIO(b"subject_id,date,kind,value\n"))

        default_snap = build_snapshot(subjects, epochs, measurements, DEFAULT_CONFIG)
        lowered = parse_config_text(
            "cutpoints.light_cpm=10\ncutpoints.moderate_cpm=100\ncutpoints.vigorous_cpm=400\n"
        )
        lowered_snap = build_snapshot(subjects, epochs, measurements, lowered)

        client_default = TestClient(create_app(default_snap, DEFAULT_CONFIG))
        client_lowered = TestClient(create_app(lowered_snap, lowered))
        day_default = client_default.get("/api/v1/subjects/1/days").json()[0]["hours"]
        day_lowered = client_lowered.get("/api/v1/subjects/1/days").json()[0]["hours"]
        assert day_default["light"] > 0 and day_default["vigorous"] == 0
        assert day_lowered["vigorous"] > 0

    def test_cors_toggle(self):
        subjects = parse_subjects(io.BytesIO(b"subject_id,gender\n1,male\n"))
        epochs = parse_actigraphy(io.BytesIO(b"subject_id,timestamp,epoch_seconds,counts\n"))
        measurements = parse_biometrics(io.BytesIO(b"subject_id,date,kind,value\n"))
        snap = build_snapshot(subjects, epochs, measurements, DEFAULT_CONFIG)

        permissive = TestClient(create_app(snap, DEFAULT_CONFIG))
        response = permissive.get("/api/v1/meta", headers={"Origin": "http://example.test"})
        assert response.headers.get("access-control-allow-origin") == "*"

        locked = parse_config_text("http.cors_allow_all=false\n")
        client = TestClient(create_app(build_snapshot(subjects, epochs, measurements, locked), locked))
        response = client.get("/api/v1/meta", headers={"Origin": "http://example.test"})
        assert "access-control-allow-origin" not in response.headers

    def test_weekend_days_change_grouping(self):
        subjects = parse_subjects(io.BytesIO(b"subject_id,gender\n1,male\n"))
        epochs = parse_actigraphy(
            io.BytesIO(
                b"subject_id,timestamp,epoch_seconds,counts\n"
                b"1,2015-03-06T10:00:00+03:00,60,0\n"  # a friday
            )
        )
        measurements = parse_biometrics(io.BytesIO(b"subject_id,date,kind,value\n"))

        satsun = parse_config_text("calendar.weekend_days=sat,sun\n")
        snap = build_snapshot(subjects, epochs, measurements, satsun)
        client = TestClient(create_app(snap, satsun))
        [day] = client.get("/api/v1/subjects/1/days").json()
        assert day["weekend"] is False
        assert client.get("/api/v1/meta").json()["config"]["calendar"]["weekend_days"] == [
            "sat",
            "sun",
        ]
