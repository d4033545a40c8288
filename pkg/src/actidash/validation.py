"""Whole-dataset invariant checking.

Nothing here raises on bad data: every violation is collected into a
ValidationReport so operators see all problems at once. A dataset is
accepted iff the report carries zero issues.
"""

from __future__ import annotations

from collections import defaultdict
from datetime import datetime, timedelta
from typing import Iterable, Sequence

from .model import (
    BODY_FAT_PCT_RANGE,
    HEIGHT_M_RANGE,
    BiometricKind,
    BiometricMeasurement,
    Epoch,
    Subject,
    ValidationIssue,
    ValidationReport,
)


def validate_dataset(
    subjects: Sequence[Subject],
    epochs: Sequence[Epoch],
    measurements: Sequence[BiometricMeasurement],
) -> ValidationReport:
    """Check every type and cross-record invariant, reporting all violations.

    Row numbers in the issues are 1-based positions within each input
    sequence (for data parsed from CSV, file line = row + 1).
    """
    issues: list[ValidationIssue] = []
    issues.extend(_check_subjects(subjects))
    known_ids = {s.id for s in subjects}
    issues.extend(_check_epochs(epochs, known_ids))
    issues.extend(_check_measurements(measurements, known_ids))
    return ValidationReport(
        issues=tuple(issues),
        n_subjects=len(subjects),
        n_epochs=len(epochs),
        n_measurements=len(measurements),
    )


def _check_subjects(subjects: Sequence[Subject]) -> Iterable[ValidationIssue]:
    seen: dict[str, int] = {}
    for row, subject in enumerate(subjects, start=1):
        if not subject.id:
            yield ValidationIssue("subjects", (row,), "empty subject id")
            continue
        if subject.id in seen:
            yield ValidationIssue(
                "subjects",
                (seen[subject.id], row),
                f"duplicate subject id {subject.id!r}",
            )
        else:
            seen[subject.id] = row


def _check_epochs(epochs: Sequence[Epoch], known_ids: set[str]) -> Iterable[ValidationIssue]:
    per_subject: dict[str, list[tuple[int, Epoch]]] = defaultdict(list)
    for row, epoch in enumerate(epochs, start=1):
        if epoch.subject_id not in known_ids:
            yield ValidationIssue(
                "actigraphy", (row,), f"unknown subject id {epoch.subject_id!r}"
            )
        if epoch.duration_s <= 0:
            yield ValidationIssue(
                "actigraphy", (row,), f"non-positive epoch duration {epoch.duration_s}"
            )
        if epoch.counts < 0:
            yield ValidationIssue("actigraphy", (row,), f"negative counts {epoch.counts}")
        per_subject[epoch.subject_id].append((row, epoch))

    # Adjacent pairs after sorting by start catch every overlapping dataset.
    for subject_id, rows in per_subject.items():
        rows.sort(key=lambda item: item[1].start)
        for (row_a, a), (row_b, b) in zip(rows, rows[1:]):
            if a.duration_s <= 0:
                continue  # already reported above; end time is meaningless
            if b.start < _epoch_end(a):
                yield ValidationIssue(
                    "actigraphy",
                    (row_a, row_b),
                    f"overlapping epochs for subject {subject_id!r} "
                    f"(rows {row_a} and {row_b})",
                )


def _epoch_end(epoch: Epoch) -> datetime:
    return epoch.start + timedelta(seconds=epoch.duration_s)


def _check_measurements(
    measurements: Sequence[BiometricMeasurement], known_ids: set[str]
) -> Iterable[ValidationIssue]:
    seen: dict[tuple[str, object, BiometricKind], int] = {}
    for row, m in enumerate(measurements, start=1):
        if m.subject_id not in known_ids:
            yield ValidationIssue(
                "biometrics", (row,), f"unknown subject id {m.subject_id!r}"
            )
        if m.value <= 0:
            yield ValidationIssue(
                "biometrics", (row,), f"non-positive value {m.value} for {m.kind.value}"
            )
        elif m.kind is BiometricKind.body_fat_pct and not (
            BODY_FAT_PCT_RANGE[0] < m.value < BODY_FAT_PCT_RANGE[1]
        ):
            yield ValidationIssue(
                "biometrics",
                (row,),
                f"body_fat_pct {m.value} outside range (0, 100)",
            )
        elif m.kind is BiometricKind.height_m and not (
            HEIGHT_M_RANGE[0] < m.value < HEIGHT_M_RANGE[1]
        ):
            yield ValidationIssue(
                "biometrics",
                (row,),
                f"height_m {m.value} outside range (0.3, 2.5)",
            )
        key = (m.subject_id, m.date, m.kind)
        if key in seen:
            yield ValidationIssue(
                "biometrics",
                (seen[key], row),
                f"duplicate measurement for subject {m.subject_id!r} "
                f"on {m.date.isoformat()} kind {m.kind.value}",
            )
        else:
            seen[key] = row
