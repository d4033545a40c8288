"""Shared domain types for the actigraphy analytics pipeline.

Everything downstream (ingestion, classification, analytics, service) works
in terms of these values. All types are immutable after construction and
safe to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import date, datetime
from typing import Mapping


class ActivityLevel(enum.IntEnum):
    """The four activity levels, totally ordered from least to most intense."""

    sedentary = 0
    light = 1
    moderate = 2
    vigorous = 3

    @classmethod
    def from_name(cls, name: str) -> "ActivityLevel":
        try:
            return cls[name]
        except KeyError:
            raise ValueError(f"unknown activity level: {name!r}") from None


class Gender(enum.Enum):
    male = "male"
    female = "female"

    @classmethod
    def from_name(cls, name: str) -> "Gender":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown gender: {name!r}") from None


class BiometricKind(enum.Enum):
    """Body measurements tracked for each subject; the unit is part of the name."""

    height_m = "height_m"
    weight_kg = "weight_kg"
    bmi = "bmi"
    body_fat_pct = "body_fat_pct"
    waist_cm = "waist_cm"
    systolic_mmhg = "systolic_mmhg"
    diastolic_mmhg = "diastolic_mmhg"

    @classmethod
    def from_name(cls, name: str) -> "BiometricKind":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown biometric kind: {name!r}") from None


# Plausibility ranges enforced by dataset validation (value > 0 always holds).
BODY_FAT_PCT_RANGE = (0.0, 100.0)  # exclusive bounds
HEIGHT_M_RANGE = (0.3, 2.5)  # exclusive bounds


@dataclass(frozen=True, slots=True)
class Subject:
    id: str
    gender: Gender


@dataclass(frozen=True, slots=True)
class Epoch:
    """One accelerometer sampling interval.

    ``start`` is timezone-aware; ``duration_s`` is in seconds; ``counts`` is
    the accumulated accelerometer activity count over the interval.
    """

    subject_id: str
    start: datetime
    duration_s: int
    counts: int


@dataclass(frozen=True, slots=True)
class ClassifiedEpoch(Epoch):
    """An epoch plus the activity level assigned by the classifier."""

    level: ActivityLevel


@dataclass(frozen=True, slots=True)
class DaySummary:
    """Hours per activity level for one subject on one local calendar day."""

    subject_id: str
    date: date
    hours: Mapping[ActivityLevel, float]
    is_weekend: bool

    @property
    def total_hours(self) -> float:
        return sum(self.hours.values())


@dataclass(frozen=True, slots=True)
class BiometricMeasurement:
    subject_id: str
    date: date
    kind: BiometricKind
    value: float


@dataclass(frozen=True, slots=True)
class BreakdownAverages:
    """Mean hours per level split weekday vs weekend.

    A group with zero days has ``None`` means (never fabricated zeros).
    """

    weekday: Mapping[ActivityLevel, float] | None
    weekend: Mapping[ActivityLevel, float] | None
    weekday_days: int
    weekend_days: int

    def weekend_mvpa(self) -> float | None:
        """Mean weekend moderate+vigorous hours, or None with no weekend days."""
        if self.weekend is None:
            return None
        return self.weekend[ActivityLevel.moderate] + self.weekend[ActivityLevel.vigorous]

    def weekday_mvpa(self) -> float | None:
        if self.weekday is None:
            return None
        return self.weekday[ActivityLevel.moderate] + self.weekday[ActivityLevel.vigorous]


@dataclass(frozen=True, slots=True)
class BiometricSummary:
    """Latest value and (last - first) trend of one kind for one subject."""

    latest: float | None
    trend: float | None


@dataclass(frozen=True, slots=True)
class ComparisonReport:
    subject_a: str
    subject_b: str
    breakdown_a: BreakdownAverages
    breakdown_b: BreakdownAverages
    # kind -> (summary for a, summary for b)
    biometric_latest: Mapping[BiometricKind, tuple[BiometricSummary, BiometricSummary]]
    flags: frozenset[str]


@dataclass(frozen=True, slots=True)
class Recommendation:
    """One rule-based finding with its supporting numeric evidence."""

    code: str
    message: str
    metric_name: str
    value: float
    reference: float | None = None


@dataclass(frozen=True, slots=True)
class MetricSample:
    """One cohort metric: the per-subject sample values and their median."""

    values: tuple[float, ...]  # sorted ascending
    median: float


@dataclass(frozen=True, slots=True)
class CohortStats:
    """Per-metric cohort distributions; keys are the metric names below."""

    metrics: Mapping[str, MetricSample]


# Metric names used by CohortStats and percentile_rank.
METRIC_WEEKDAY_MVPA = "weekday_mvpa_hours"
METRIC_WEEKEND_MVPA = "weekend_mvpa_hours"
METRIC_AFTERNOON_VIGOROUS = "afternoon_vigorous_hours"
METRIC_LATEST_BMI = "latest_bmi"

COHORT_METRICS = (
    METRIC_WEEKDAY_MVPA,
    METRIC_WEEKEND_MVPA,
    METRIC_AFTERNOON_VIGOROUS,
    METRIC_LATEST_BMI,
)


@dataclass(frozen=True, slots=True)
class ValidationIssue:
    """One invariant violation with row-level provenance.

    ``rows`` are 1-based data-record ordinals within the named source list
    (for CSV input, file line = row + 1 because of the header line).
    """

    source: str  # "subjects" | "actigraphy" | "biometrics"
    rows: tuple[int, ...]
    message: str


@dataclass(frozen=True, slots=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]
    n_subjects: int = 0
    n_epochs: int = 0
    n_measurements: int = 0

    @property
    def ok(self) -> bool:
        return not self.issues


@dataclass(frozen=True, slots=True)
class SubjectData:
    """Everything the analytics needs about one subject.

    ``summaries`` are unfiltered day summaries (filtering is applied per
    query); ``epochs`` keep the classified stream for day-part metrics.
    """

    subject: Subject
    epochs: tuple[ClassifiedEpoch, ...] = ()
    summaries: tuple[DaySummary, ...] = ()
    measurements: tuple[BiometricMeasurement, ...] = field(default=())
