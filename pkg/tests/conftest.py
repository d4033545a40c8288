from __future__ import annotations

import io
from datetime import date, datetime, timedelta, timezone

import pytest
from fastapi.testclient import TestClient

from actidash.analytics import DEFAULT_CALENDAR
from actidash.config import DEFAULT_CONFIG
from actidash.ingest import parse_actigraphy, parse_biometrics, parse_subjects
from actidash.model import (
    ActivityLevel,
    BiometricKind,
    BiometricMeasurement,
    ClassifiedEpoch,
    DaySummary,
    Epoch,
    Gender,
    Subject,
)
from actidash.service import build_snapshot, create_app
from actidash.synth import golden_scenario

TZ = timezone(timedelta(hours=3))


def ts(text: str) -> datetime:
    return datetime.fromisoformat(text)


def make_epoch(
    subject_id: str = "1",
    start: str = "2015-03-02T10:00:00+03:00",
    duration_s: int = 60,
    counts: int = 0,
) -> Epoch:
    return Epoch(subject_id=subject_id, start=ts(start), duration_s=duration_s, counts=counts)


def make_classified(
    subject_id: str,
    start: str,
    duration_s: int,
    level: ActivityLevel,
    counts: int = 0,
) -> ClassifiedEpoch:
    return ClassifiedEpoch(
        subject_id=subject_id,
        start=ts(start),
        duration_s=duration_s,
        counts=counts,
        level=level,
    )


def make_day(
    subject_id: str,
    day: str,
    sedentary: float = 0.0,
    light: float = 0.0,
    moderate: float = 0.0,
    vigorous: float = 0.0,
) -> DaySummary:
    d = date.fromisoformat(day)
    return DaySummary(
        subject_id=subject_id,
        date=d,
        hours={
            ActivityLevel.sedentary: sedentary,
            ActivityLevel.light: light,
            ActivityLevel.moderate: moderate,
            ActivityLevel.vigorous: vigorous,
        },
        is_weekend=DEFAULT_CALENDAR.is_weekend(d),
    )


def make_measurement(
    subject_id: str, day: str, kind: BiometricKind, value: float
) -> BiometricMeasurement:
    return BiometricMeasurement(
        subject_id=subject_id, date=date.fromisoformat(day), kind=kind, value=value
    )


def make_subject(subject_id: str, gender: Gender = Gender.male) -> Subject:
    return Subject(id=subject_id, gender=gender)


@pytest.fixture(scope="session")
def golden_files():
    return golden_scenario()


@pytest.fixture(scope="session")
def golden_dataset(golden_files):
    subjects = parse_subjects(io.BytesIO(golden_files.subjects_csv.encode()))
    epochs = parse_actigraphy(io.BytesIO(golden_files.actigraphy_csv.encode()))
    measurements = parse_biometrics(io.BytesIO(golden_files.biometrics_csv.encode()))
    return subjects, epochs, measurements


@pytest.fixture(scope="session")
def golden_snapshot(golden_dataset):
    subjects, epochs, measurements = golden_dataset
    return build_snapshot(subjects, epochs, measurements, DEFAULT_CONFIG)


@pytest.fixture(scope="session")
def golden_dir(golden_files, tmp_path_factory):
    out = tmp_path_factory.mktemp("golden")
    golden_files.write_to(out)
    return out


@pytest.fixture(scope="session")
def client(golden_snapshot):
    return TestClient(create_app(golden_snapshot, DEFAULT_CONFIG))
