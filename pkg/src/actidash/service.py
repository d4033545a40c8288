"""Stateless HTTP/JSON service over a dataset loaded at startup.

All endpoints live under /api/v1 and read from an immutable DatasetSnapshot,
so concurrent requests need no locks and identical requests yield identical
bodies. Errors use one shape: {"error": {"code": ..., "message": ...}} with
HTTP 400 (bad request) or 404 (nothing there).

Wire conventions: dates are YYYY-MM-DD; hour quantities and derived numbers
(trends, interpolated values, recommendation metrics) are rounded to 4
decimals; raw measurement values are passed through untouched.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Mapping, Sequence

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import analytics
from .classify import classify_all
from .config import AppConfig, DEFAULT_CONFIG, config_dict
from .ingest import derive_bmi, load_dataset
from .model import (
    COHORT_METRICS,
    METRIC_LATEST_BMI,
    ActivityLevel,
    BiometricKind,
    BiometricMeasurement,
    BreakdownAverages,
    CohortStats,
    ComparisonReport,
    DaySummary,
    Epoch,
    Gender,
    Recommendation,
    Subject,
    SubjectData,
    ValidationReport,
)
from .validation import validate_dataset

logger = logging.getLogger("actidash.service")


class DatasetInvalidError(Exception):
    """Raised when a dataset fails validation; carries the full report."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(f"dataset has {len(report.issues)} validation issue(s)")


@dataclass(frozen=True, slots=True)
class DatasetSnapshot:
    """Validated, classified, summarized dataset plus raw row counts."""

    data: Mapping[str, SubjectData]  # keyed by subject id
    n_subject_rows: int
    n_epoch_rows: int
    n_measurement_rows: int
    date_range: tuple[date, date] | None
    loaded_at: datetime

    def subjects_sorted(self) -> list[Subject]:
        return [self.data[sid].subject for sid in sorted(self.data)]


def build_snapshot(
    subjects: Sequence[Subject],
    epochs: Sequence[Epoch],
    measurements: Sequence[BiometricMeasurement],
    config: AppConfig = DEFAULT_CONFIG,
) -> DatasetSnapshot:
    """Validate and precompute everything the endpoints serve.

    Raises DatasetInvalidError when validation reports any issue: the
    service refuses to run on bad data.
    """
    report = validate_dataset(subjects, epochs, measurements)
    if not report.ok:
        raise DatasetInvalidError(report)

    enriched = derive_bmi(measurements)
    epochs_by_subject: dict[str, list[Epoch]] = {s.id: [] for s in subjects}
    for epoch in epochs:
        epochs_by_subject[epoch.subject_id].append(epoch)
    measurements_by_subject: dict[str, list[BiometricMeasurement]] = {
        s.id: [] for s in subjects
    }
    for m in enriched:
        measurements_by_subject[m.subject_id].append(m)

    data: dict[str, SubjectData] = {}
    first: date | None = None
    last: date | None = None
    for subject in subjects:
        classified = classify_all(epochs_by_subject[subject.id], config.cutpoints)
        summaries = analytics.summarize_days(classified, config.calendar)
        if summaries:
            first = summaries[0].date if first is None else min(first, summaries[0].date)
            last = summaries[-1].date if last is None else max(last, summaries[-1].date)
        data[subject.id] = SubjectData(
            subject=subject,
            epochs=tuple(classified),
            summaries=tuple(summaries),
            measurements=tuple(measurements_by_subject[subject.id]),
        )
    return DatasetSnapshot(
        data=data,
        n_subject_rows=len(subjects),
        n_epoch_rows=len(epochs),
        n_measurement_rows=len(measurements),
        date_range=(first, last) if first is not None and last is not None else None,
        loaded_at=datetime.now(timezone.utc),
    )


def load_snapshot(data_dir: Path, config: AppConfig = DEFAULT_CONFIG) -> DatasetSnapshot:
    subjects, epochs, measurements = load_dataset(data_dir)
    return build_snapshot(subjects, epochs, measurements, config)


# --- wire serialization (shared with the CLI report command) ---------------


def _round4(value: float) -> float:
    return round(value, 4)


def hours_to_json(hours: Mapping[ActivityLevel, float]) -> dict:
    return {level.name: _round4(hours[level]) for level in ActivityLevel}


def day_to_json(summary: DaySummary) -> dict:
    return {
        "date": summary.date.isoformat(),
        "weekend": summary.is_weekend,
        "hours": hours_to_json(summary.hours),
    }


def breakdown_to_json(bd: BreakdownAverages) -> dict:
    return {
        "weekday": {
            "means": hours_to_json(bd.weekday) if bd.weekday is not None else None,
            "days": bd.weekday_days,
        },
        "weekend": {
            "means": hours_to_json(bd.weekend) if bd.weekend is not None else None,
            "days": bd.weekend_days,
        },
    }


def comparison_to_json(report: ComparisonReport) -> dict:
    biometrics = {}
    for kind, (summary_a, summary_b) in report.biometric_latest.items():
        biometrics[kind.value] = {
            "a": {
                "latest": summary_a.latest,
                "trend": _round4(summary_a.trend) if summary_a.trend is not None else None,
            },
            "b": {
                "latest": summary_b.latest,
                "trend": _round4(summary_b.trend) if summary_b.trend is not None else None,
            },
        }
    return {
        "subject_a": report.subject_a,
        "subject_b": report.subject_b,
        "breakdown_a": breakdown_to_json(report.breakdown_a),
        "breakdown_b": breakdown_to_json(report.breakdown_b),
        "biometric_latest": biometrics,
        "flags": sorted(report.flags),
    }


def recommendation_to_json(rec: Recommendation) -> dict:
    metric = {"name": rec.metric_name, "value": _round4(rec.value)}
    if rec.reference is not None:
        metric["reference"] = _round4(rec.reference)
    return {"code": rec.code, "message": rec.message, "metric": metric}


def cohort_stats_to_json(stats: CohortStats) -> dict:
    metrics = {}
    for name in COHORT_METRICS:
        sample = stats.metrics.get(name)
        if sample is None:
            metrics[name] = {"samples": [], "median": None}
            continue
        if name == METRIC_LATEST_BMI:
            values = list(sample.values)
            median = sample.median
        else:
            values = [_round4(v) for v in sample.values]
            median = _round4(sample.median)
        metrics[name] = {"samples": values, "median": median}
    return {"metrics": metrics}


# --- request plumbing -------------------------------------------------------


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def _bad(code: str, message: str) -> ApiError:
    return ApiError(400, code, message)


def _parse_gender(raw: str | None) -> Gender | None:
    if raw is None:
        return None
    try:
        return Gender.from_name(raw)
    except ValueError as exc:
        raise _bad("bad_gender", str(exc)) from None


def _parse_date(raw: str | None, param: str) -> date | None:
    if raw is None:
        return None
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise _bad("bad_date", f"{param}: bad date {raw!r} (expected YYYY-MM-DD)") from None


def _parse_filter(
    from_raw: str | None, to_raw: str | None, threshold_raw: str | None
) -> analytics.FilterSpec:
    threshold = 24.0
    if threshold_raw is not None:
        try:
            threshold = float(threshold_raw)
        except ValueError:
            raise _bad(
                "bad_threshold", f"max_sedentary_hours: not a number: {threshold_raw!r}"
            ) from None
    try:
        return analytics.FilterSpec(
            max_sedentary_hours=threshold,
            date_from=_parse_date(from_raw, "from"),
            date_to=_parse_date(to_raw, "to"),
        )
    except ValueError as exc:
        raise _bad("bad_filter", str(exc)) from None


def _parse_kinds(raw: str | None) -> list[BiometricKind]:
    if raw is None:
        return list(BiometricKind)
    kinds = []
    for token in raw.split(","):
        try:
            kinds.append(BiometricKind.from_name(token.strip()))
        except ValueError as exc:
            raise _bad("bad_kind", str(exc)) from None
    return kinds


def create_app(snapshot: DatasetSnapshot, config: AppConfig = DEFAULT_CONFIG) -> FastAPI:
    app = FastAPI(title="actidash", docs_url=None, redoc_url=None)
    if config.cors_allow_all:
        app.add_middleware(
            CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
        )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.middleware("http")
    async def log_requests(request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        logger.info(
            "%s %s %d %.1fms",
            request.method,
            request.url.path,
            response.status_code,
            elapsed_ms,
        )
        return response

    def subject_data(subject_id: str) -> SubjectData:
        data = snapshot.data.get(subject_id)
        if data is None:
            raise ApiError(404, "unknown_subject", f"unknown subject id {subject_id!r}")
        return data

    @app.get("/api/v1/subjects")
    def list_subjects(gender: str | None = None):
        wanted = _parse_gender(gender)
        return [
            {"id": s.id, "gender": s.gender.value}
            for s in snapshot.subjects_sorted()
            if wanted is None or s.gender is wanted
        ]

    @app.get("/api/v1/subjects/{subject_id}/days")
    def subject_days(
        subject_id: str,
        from_: str | None = Query(None, alias="from"),
        to: str | None = None,
        max_sedentary_hours: str | None = None,
    ):
        data = subject_data(subject_id)
        spec = _parse_filter(from_, to, max_sedentary_hours)
        return [day_to_json(s) for s in analytics.filter_days(data.summaries, spec)]

    @app.get("/api/v1/subjects/{subject_id}/biometrics")
    def subject_biometrics(
        subject_id: str,
        kinds: str | None = None,
        daily: str | None = None,
        from_: str | None = Query(None, alias="from"),
        to: str | None = None,
    ):
        data = subject_data(subject_id)
        wanted = _parse_kinds(kinds)
        if daily is not None and daily not in ("true", "false"):
            raise _bad("bad_daily", f"daily: expected true or false, got {daily!r}")
        include_daily = daily == "true"
        window = analytics.FilterSpec(
            date_from=_parse_date(from_, "from"), date_to=_parse_date(to, "to")
        )

        body = {}
        for kind in wanted:
            series = sorted(
                (m for m in data.measurements
                 if m.kind is kind and window.contains_date(m.date)),
                key=lambda m: m.date,
            )
            entry = {
                "measurements": [
                    {"date": m.date.isoformat(), "value": m.value} for m in series
                ]
            }
            if include_daily:
                sampled = analytics.sample_biometric_daily(series) if series else []
                entry["daily"] = [
                    {"date": d.isoformat(), "value": _round4(v)} for d, v in sampled
                ]
            body[kind.value] = entry
        return body

    @app.get("/api/v1/subjects/{subject_id}/breakdown")
    def subject_breakdown(
        subject_id: str,
        from_: str | None = Query(None, alias="from"),
        to: str | None = None,
        max_sedentary_hours: str | None = None,
    ):
        data = subject_data(subject_id)
        spec = _parse_filter(from_, to, max_sedentary_hours)
        return breakdown_to_json(
            analytics.breakdown(analytics.filter_days(data.summaries, spec))
        )

    @app.get("/api/v1/compare")
    def compare(
        a: str | None = None,
        b: str | None = None,
        from_: str | None = Query(None, alias="from"),
        to: str | None = None,
        max_sedentary_hours: str | None = None,
        kinds: str | None = None,
    ):
        if not a or not b:
            raise _bad("missing_param", "both a and b subject ids are required")
        if a == b:
            raise _bad("same_subject", "a and b must differ")
        data_a = subject_data(a)
        data_b = subject_data(b)
        spec = _parse_filter(from_, to, max_sedentary_hours)
        report = analytics.compare_subjects(
            data_a,
            data_b,
            spec,
            _parse_kinds(kinds),
            epsilon_hours=config.epsilon_hours,
        )
        return comparison_to_json(report)

    @app.get("/api/v1/cohort/stats")
    def cohort(gender: str | None = None, max_sedentary_hours: str | None = None):
        wanted = _parse_gender(gender)
        spec = _parse_filter(None, None, max_sedentary_hours)
        try:
            stats = analytics.cohort_stats(
                list(snapshot.data.values()),
                spec,
                config.calendar,
                config.dayparts,
                gender=wanted,
            )
        except ValueError:
            raise ApiError(404, "empty_cohort", "no subjects match the cohort filter") from None
        return cohort_stats_to_json(stats)

    @app.get("/api/v1/subjects/{subject_id}/recommendations")
    def recommendations(subject_id: str, target_weight_kg: str | None = None):
        data = subject_data(subject_id)
        target: float | None = None
        if target_weight_kg is not None:
            try:
                target = float(target_weight_kg)
            except ValueError:
                raise _bad(
                    "bad_target", f"target_weight_kg: not a number: {target_weight_kg!r}"
                ) from None
            if target <= 0:
                raise _bad("bad_target", f"target_weight_kg must be positive, got {target}")
        stats = analytics.cohort_stats(
            list(snapshot.data.values()), analytics.FilterSpec(), config.calendar, config.dayparts
        )
        recs = analytics.recommend(
            data,
            target,
            stats,
            cal=config.calendar,
            dayparts=config.dayparts,
            weekend_ratio=config.weekend_ratio,
        )
        return [recommendation_to_json(r) for r in recs]

    @app.get("/api/v1/meta")
    def meta():
        date_range = None
        if snapshot.date_range is not None:
            date_range = {
                "from": snapshot.date_range[0].isoformat(),
                "to": snapshot.date_range[1].isoformat(),
            }
        return {
            "dataset": {
                "subjects": snapshot.n_subject_rows,
                "epochs": snapshot.n_epoch_rows,
                "measurements": snapshot.n_measurement_rows,
                "date_range": date_range,
            },
            "config": config_dict(config),
        }

    return app
