"""Derived quantities behind every dashboard view.

Daily summaries, the sedentary-hours day filter, weekday/weekend breakdowns,
sparse biometric interpolation, two-subject comparison, cohort statistics
with mid-rank percentiles, and the rule-based recommendations. All functions
are pure over immutable inputs; per-subject work parallelizes trivially.
"""

from __future__ import annotations

import enum
import statistics
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone, tzinfo
from typing import Iterable, Mapping, Sequence

from .model import (
    METRIC_AFTERNOON_VIGOROUS,
    METRIC_LATEST_BMI,
    METRIC_WEEKDAY_MVPA,
    METRIC_WEEKEND_MVPA,
    ActivityLevel,
    BiometricKind,
    BiometricMeasurement,
    BiometricSummary,
    BreakdownAverages,
    ClassifiedEpoch,
    CohortStats,
    ComparisonReport,
    DaySummary,
    Gender,
    MetricSample,
    Recommendation,
    SubjectData,
)

# Day-name vocabulary for the calendar.weekend_days configuration key;
# indexes follow date.weekday() (Monday = 0).
WEEKDAY_NAMES = ("mon", "tue", "wed", "thu", "fri", "sat", "sun")

_DAY_SUM_TOLERANCE_H = 1e-9


@dataclass(frozen=True, slots=True)
class FilterSpec:
    """Day retention criteria: sedentary-hours cap plus optional date window.

    A day is dropped iff its sedentary hours exceed the cap strictly
    ("more than"), so the default of 24 retains everything.
    """

    max_sedentary_hours: float = 24.0
    date_from: date | None = None
    date_to: date | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.max_sedentary_hours <= 24.0:
            raise ValueError(
                f"max_sedentary_hours must be in [0, 24], got {self.max_sedentary_hours}"
            )
        if self.date_from and self.date_to and self.date_from > self.date_to:
            raise ValueError(f"empty date window {self.date_from}..{self.date_to}")

    def keeps(self, summary: DaySummary) -> bool:
        if summary.hours[ActivityLevel.sedentary] > self.max_sedentary_hours:
            return False
        if self.date_from and summary.date < self.date_from:
            return False
        if self.date_to and summary.date > self.date_to:
            return False
        return True

    def contains_date(self, day: date) -> bool:
        if self.date_from and day < self.date_from:
            return False
        if self.date_to and day > self.date_to:
            return False
        return True


@dataclass(frozen=True, slots=True)
class CalendarConfig:
    """Local-date reckoning: a timezone and which weekdays count as weekend.

    Defaults to UTC+03:00 with a Friday/Saturday weekend (the study cohort's
    locale); both are configurable because neither is universal.
    """

    timezone: tzinfo = timezone(timedelta(hours=3))
    weekend_days: frozenset[int] = frozenset({4, 5})  # fri, sat

    def __post_init__(self) -> None:
        if not self.weekend_days or len(self.weekend_days) >= 7:
            raise ValueError("weekend_days must be a non-empty proper subset of the week")
        if not all(0 <= d <= 6 for d in self.weekend_days):
            raise ValueError(f"weekend day numbers must be 0..6, got {self.weekend_days}")

    def local_date(self, instant: datetime) -> date:
        return instant.astimezone(self.timezone).date()

    def is_weekend(self, day: date) -> bool:
        return day.weekday() in self.weekend_days


DEFAULT_CALENDAR = CalendarConfig()


class DayPart(enum.Enum):
    night = "night"
    morning = "morning"
    afternoon = "afternoon"
    evening = "evening"


@dataclass(frozen=True, slots=True)
class DayPartConfig:
    """Half-open local-time buckets partitioning the 24-hour day."""

    night_end_hour: int = 6
    morning_end_hour: int = 12
    afternoon_end_hour: int = 18

    def __post_init__(self) -> None:
        if not 0 < self.night_end_hour < self.morning_end_hour < self.afternoon_end_hour < 24:
            raise ValueError("day-part boundaries must satisfy 0 < night < morning < afternoon < 24")

    def part_of(self, local_hour: int) -> DayPart:
        if local_hour < self.night_end_hour:
            return DayPart.night
        if local_hour < self.morning_end_hour:
            return DayPart.morning
        if local_hour < self.afternoon_end_hour:
            return DayPart.afternoon
        return DayPart.evening


DEFAULT_DAYPARTS = DayPartConfig()


def summarize_days(
    epochs: Sequence[ClassifiedEpoch], cal: CalendarConfig = DEFAULT_CALENDAR
) -> list[DaySummary]:
    """Aggregate one subject's classified epochs into per-day level hours.

    Epochs are attributed to the local calendar date of their start time
    (no splitting across midnight). Output is sorted by date and conserves
    time: the four hour values of a day sum to the total epoch duration
    recorded for that day.
    """
    if not epochs:
        return []
    subject_ids = {e.subject_id for e in epochs}
    if len(subject_ids) > 1:
        raise ValueError(f"epochs span multiple subjects: {sorted(subject_ids)}")
    subject_id = epochs[0].subject_id

    seconds_by_date: dict[date, list[float]] = {}
    for e in epochs:
        day = cal.local_date(e.start)
        per_level = seconds_by_date.get(day)
        if per_level is None:
            per_level = seconds_by_date[day] = [0.0, 0.0, 0.0, 0.0]
        per_level[e.level] += e.duration_s

    summaries = []
    for day in sorted(seconds_by_date):
        per_level = seconds_by_date[day]
        hours = {level: per_level[level] / 3600.0 for level in ActivityLevel}
        total = sum(hours.values())
        if total > 24.0 + _DAY_SUM_TOLERANCE_H:
            raise ValueError(
                f"day {day} of subject {subject_id!r} sums to {total} h; "
                "epochs overlap (validate the dataset first)"
            )
        summaries.append(
            DaySummary(
                subject_id=subject_id,
                date=day,
                hours=hours,
                is_weekend=cal.is_weekend(day),
            )
        )
    return summaries


def filter_days(summaries: Iterable[DaySummary], spec: FilterSpec) -> list[DaySummary]:
    """Keep days within the window whose sedentary hours don't exceed the cap."""
    return [s for s in summaries if spec.keeps(s)]


def breakdown(summaries: Iterable[DaySummary]) -> BreakdownAverages:
    """Mean hours per level over weekday and weekend groups of retained days."""
    sums = {False: [0.0, 0.0, 0.0, 0.0], True: [0.0, 0.0, 0.0, 0.0]}
    counts = {False: 0, True: 0}
    for s in summaries:
        group = sums[s.is_weekend]
        for level in ActivityLevel:
            group[level] += s.hours[level]
        counts[s.is_weekend] += 1

    def means(weekend: bool) -> Mapping[ActivityLevel, float] | None:
        n = counts[weekend]
        if n == 0:
            return None
        return {level: sums[weekend][level] / n for level in ActivityLevel}

    return BreakdownAverages(
        weekday=means(False),
        weekend=means(True),
        weekday_days=counts[False],
        weekend_days=counts[True],
    )


def sample_biometric_daily(
    series: Sequence[BiometricMeasurement],
) -> list[tuple[date, float]]:
    """One value per calendar day across the measured span of one (subject, kind).

    Exact at measurement dates, linear in day count between adjacent
    measurements, and never extrapolated outside [first, last].
    """
    if not series:
        raise ValueError("empty biometric series")
    keys = {(m.subject_id, m.kind) for m in series}
    if len(keys) > 1:
        raise ValueError(f"series mixes subjects or kinds: {sorted(str(k) for k in keys)}")
    knots = sorted(series, key=lambda m: m.date)
    for a, b in zip(knots, knots[1:]):
        if a.date == b.date:
            raise ValueError(f"duplicate measurement date {a.date}")

    points: list[tuple[date, float]] = []
    for a, b in zip(knots, knots[1:]):
        span = (b.date - a.date).days
        points.append((a.date, a.value))
        for k in range(1, span):
            points.append((a.date + timedelta(days=k), a.value + (b.value - a.value) * k / span))
    points.append((knots[-1].date, knots[-1].value))
    return points


def _biometric_summary(
    measurements: Iterable[BiometricMeasurement],
    kind: BiometricKind,
    window: FilterSpec,
) -> BiometricSummary:
    dated = sorted(
        (m.date, m.value)
        for m in measurements
        if m.kind is kind and window.contains_date(m.date)
    )
    if not dated:
        return BiometricSummary(latest=None, trend=None)
    return BiometricSummary(latest=dated[-1][1], trend=dated[-1][1] - dated[0][1])


def compare_subjects(
    a: SubjectData,
    b: SubjectData,
    spec: FilterSpec,
    kinds: Sequence[BiometricKind],
    *,
    epsilon_hours: float = 0.1,
) -> ComparisonReport:
    """Side-by-side activity breakdowns, biometric summaries, and flags.

    Activity flags compare weekend MVPA means and require both subjects to
    have retained weekend days; a difference must exceed ``epsilon_hours``
    to flag. Kind flags ({a,b}_higher_<kind>) compare latest measured values
    strictly. Swapping a and b mirrors every flag.
    """
    breakdown_a = breakdown(filter_days(a.summaries, spec))
    breakdown_b = breakdown(filter_days(b.summaries, spec))
    biometrics = {
        kind: (
            _biometric_summary(a.measurements, kind, spec),
            _biometric_summary(b.measurements, kind, spec),
        )
        for kind in kinds
    }

    flags = set()
    mvpa_a, mvpa_b = breakdown_a.weekend_mvpa(), breakdown_b.weekend_mvpa()
    if mvpa_a is not None and mvpa_b is not None:
        if mvpa_a > mvpa_b + epsilon_hours:
            flags.add("a_more_active_weekend")
        elif mvpa_b > mvpa_a + epsilon_hours:
            flags.add("b_more_active_weekend")
    for kind, (summary_a, summary_b) in biometrics.items():
        if summary_a.latest is None or summary_b.latest is None:
            continue
        if summary_a.latest > summary_b.latest:
            flags.add(f"a_higher_{kind.value}")
        elif summary_b.latest > summary_a.latest:
            flags.add(f"b_higher_{kind.value}")

    return ComparisonReport(
        subject_a=a.subject.id,
        subject_b=b.subject.id,
        breakdown_a=breakdown_a,
        breakdown_b=breakdown_b,
        biometric_latest=biometrics,
        flags=frozenset(flags),
    )


def afternoon_vigorous_hours(
    epochs: Sequence[ClassifiedEpoch],
    cal: CalendarConfig = DEFAULT_CALENDAR,
    dayparts: DayPartConfig = DEFAULT_DAYPARTS,
    retained_dates: frozenset[date] | set[date] | None = None,
) -> float:
    """Mean vigorous hours per day attributed to the afternoon bucket.

    An epoch belongs to the bucket of its local start time. The mean runs
    over ``retained_dates`` when given (days surviving the filter), else over
    every date present in the data; 0.0 when there are no days at all.
    """
    seconds_by_date: dict[date, float] = {}
    dates_present: set[date] = set()
    for e in epochs:
        local = e.start.astimezone(cal.timezone)
        day = local.date()
        dates_present.add(day)
        if e.level is ActivityLevel.vigorous and dayparts.part_of(local.hour) is DayPart.afternoon:
            seconds_by_date[day] = seconds_by_date.get(day, 0.0) + e.duration_s

    days = retained_dates if retained_dates is not None else dates_present
    if not days:
        return 0.0
    total_hours = sum(seconds_by_date.get(day, 0.0) for day in days) / 3600.0
    return total_hours / len(days)


def subject_metrics(
    data: SubjectData,
    spec: FilterSpec,
    cal: CalendarConfig = DEFAULT_CALENDAR,
    dayparts: DayPartConfig = DEFAULT_DAYPARTS,
) -> dict[str, float]:
    """The cohort metrics one subject contributes, omitting unobtainable ones.

    A subject with zero retained days contributes no activity metrics (means
    over nothing are absent, not zero); latest_bmi needs at least one BMI
    measurement inside the date window.
    """
    retained = filter_days(data.summaries, spec)
    metrics: dict[str, float] = {}
    if retained:
        bd = breakdown(retained)
        if bd.weekday is not None:
            metrics[METRIC_WEEKDAY_MVPA] = bd.weekday_mvpa()
        if bd.weekend is not None:
            metrics[METRIC_WEEKEND_MVPA] = bd.weekend_mvpa()
        metrics[METRIC_AFTERNOON_VIGOROUS] = afternoon_vigorous_hours(
            data.epochs, cal, dayparts, retained_dates={s.date for s in retained}
        )
    bmi = _biometric_summary(data.measurements, BiometricKind.bmi, spec)
    if bmi.latest is not None:
        metrics[METRIC_LATEST_BMI] = bmi.latest
    return metrics


def cohort_stats(
    cohort: Sequence[SubjectData],
    spec: FilterSpec,
    cal: CalendarConfig = DEFAULT_CALENDAR,
    dayparts: DayPartConfig = DEFAULT_DAYPARTS,
    gender: Gender | None = None,
) -> CohortStats:
    """Per-metric sample (one value per contributing subject) and median."""
    members = [d for d in cohort if gender is None or d.subject.gender is gender]
    if not members:
        raise ValueError("empty cohort")
    samples: dict[str, list[float]] = {}
    for data in members:
        for name, value in subject_metrics(data, spec, cal, dayparts).items():
            samples.setdefault(name, []).append(value)
    return CohortStats(
        metrics={
            name: MetricSample(values=tuple(sorted(values)), median=statistics.median(values))
            for name, values in samples.items()
        }
    )


def percentile_rank(stats: CohortStats, metric: str, value: float) -> float:
    """Mid-rank percentile of ``value`` within the metric's cohort sample."""
    sample = stats.metrics.get(metric)
    if sample is None:
        raise ValueError(f"unknown metric or empty sample: {metric!r}")
    below = sum(1 for x in sample.values if x < value)
    equal = sum(1 for x in sample.values if x == value)
    return 100.0 * (below + 0.5 * equal) / len(sample.values)


def recommend(
    data: SubjectData,
    target_weight_kg: float | None,
    cohort: CohortStats,
    *,
    spec: FilterSpec = FilterSpec(),
    cal: CalendarConfig = DEFAULT_CALENDAR,
    dayparts: DayPartConfig = DEFAULT_DAYPARTS,
    weekend_ratio: float = 0.8,
) -> list[Recommendation]:
    """Independent rule evaluations; missing data suppresses a rule silently.

    R1 weekend_activity: weekend MVPA below ``weekend_ratio`` x weekday MVPA.
    R2 afternoon_vigorous: afternoon vigorous mean below the cohort median.
    R3 target_weight: latest weight above the given target.
    """
    metrics = subject_metrics(data, spec, cal, dayparts)
    recs: list[Recommendation] = []

    weekday_mvpa = metrics.get(METRIC_WEEKDAY_MVPA)
    weekend_mvpa = metrics.get(METRIC_WEEKEND_MVPA)
    if weekday_mvpa is not None and weekend_mvpa is not None:
        if weekend_mvpa < weekday_mvpa * weekend_ratio:
            recs.append(
                Recommendation(
                    code="weekend_activity",
                    message=(
                        "Weekend moderate-to-vigorous activity falls short of "
                        "weekday levels; plan active weekends."
                    ),
                    metric_name=METRIC_WEEKEND_MVPA,
                    value=weekend_mvpa,
                    reference=weekday_mvpa,
                )
            )

    afternoon = metrics.get(METRIC_AFTERNOON_VIGOROUS)
    cohort_afternoon = cohort.metrics.get(METRIC_AFTERNOON_VIGOROUS)
    if afternoon is not None and cohort_afternoon is not None:
        if afternoon < cohort_afternoon.median:
            recs.append(
                Recommendation(
                    code="afternoon_vigorous",
                    message=(
                        "Afternoon vigorous activity is below the cohort median; "
                        "schedule vigorous activity in the afternoon."
                    ),
                    metric_name=METRIC_AFTERNOON_VIGOROUS,
                    value=afternoon,
                    reference=cohort_afternoon.median,
                )
            )

    if target_weight_kg is not None:
        latest_weight = _biometric_summary(
            data.measurements, BiometricKind.weight_kg, spec
        ).latest
        if latest_weight is not None and latest_weight > target_weight_kg:
            recs.append(
                Recommendation(
                    code="target_weight",
                    message="Latest weight is above the target; keep converging toward it.",
                    metric_name="weight_gap_kg",
                    value=latest_weight - target_weight_kg,
                    reference=target_weight_kg,
                )
            )
    return recs
