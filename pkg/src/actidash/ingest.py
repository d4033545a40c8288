"""Strict parsers and serializers for the three on-disk datasets.

File formats (UTF-8, comma-separated, ``\\n`` or ``\\r\\n`` line endings,
mandatory header, no quoting):

    subjects.csv    subject_id,gender
    actigraphy.csv  subject_id,timestamp,epoch_seconds,counts
    biometrics.csv  subject_id,date,kind,value

Parsing rejects rather than coerces: any malformed row raises ParseError
with its file line number.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from datetime import date, datetime
from pathlib import Path
from typing import IO, Iterator, Sequence

from .model import BiometricKind, BiometricMeasurement, Epoch, Gender, Subject

SUBJECTS_FILENAME = "subjects.csv"
ACTIGRAPHY_FILENAME = "actigraphy.csv"
BIOMETRICS_FILENAME = "biometrics.csv"
DATA_FILENAMES = (SUBJECTS_FILENAME, ACTIGRAPHY_FILENAME, BIOMETRICS_FILENAME)

_SUBJECTS_HEADER = "subject_id,gender"
_ACTIGRAPHY_HEADER = "subject_id,timestamp,epoch_seconds,counts"
_BIOMETRICS_HEADER = "subject_id,date,kind,value"


class ParseError(ValueError):
    """A malformed input file; carries the source label and 1-based line."""

    def __init__(self, source: str, line: int, message: str):
        self.source = source
        self.line = line
        self.message = message
        super().__init__(f"{source}: line {line}: {message}")


@dataclass(frozen=True, slots=True)
class RawRow:
    """One data row as read from disk, before field parsing."""

    file: str
    line: int  # 1-based; line 1 is the header
    fields: tuple[str, ...]


def _decode(source: str, stream: IO[bytes]) -> str:
    data = stream.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        raise ParseError(source, line, "file is not valid UTF-8") from None


def _iter_rows(source: str, stream: IO[bytes], header: str) -> Iterator[RawRow]:
    lines = _decode(source, stream).splitlines()
    if not lines or lines[0] != header:
        found = lines[0] if lines else "<empty file>"
        raise ParseError(source, 1, f"expected header {header!r}, found {found!r}")
    n_fields = header.count(",") + 1
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != n_fields:
            raise ParseError(
                source, line_no, f"expected {n_fields} fields, found {len(fields)}"
            )
        yield RawRow(source, line_no, tuple(fields))


def parse_subjects(stream: IO[bytes]) -> list[Subject]:
    """Parse subjects.csv; gender is case-insensitive male/female."""
    subjects: list[Subject] = []
    seen: set[str] = set()
    for row in _iter_rows(SUBJECTS_FILENAME, stream, _SUBJECTS_HEADER):
        subject_id, gender_str = row.fields
        if not subject_id:
            raise ParseError(row.file, row.line, "empty subject_id")
        if subject_id in seen:
            raise ParseError(row.file, row.line, f"duplicate subject_id {subject_id!r}")
        try:
            gender = Gender.from_name(gender_str)
        except ValueError as exc:
            raise ParseError(row.file, row.line, str(exc)) from None
        seen.add(subject_id)
        subjects.append(Subject(id=subject_id, gender=gender))
    return subjects


def parse_actigraphy(stream: IO[bytes]) -> list[Epoch]:
    """Parse actigraphy.csv; epochs are returned in file order.

    Timestamps must be ISO-8601 with an explicit UTC offset; epoch_seconds
    must be a positive integer (no sign, no fraction); counts a non-negative
    integer (no sign).
    """
    epochs: list[Epoch] = []
    for row in _iter_rows(ACTIGRAPHY_FILENAME, stream, _ACTIGRAPHY_HEADER):
        subject_id, ts_str, dur_str, counts_str = row.fields
        if not subject_id:
            raise ParseError(row.file, row.line, "empty subject_id")
        start = _parse_timestamp(row, ts_str)
        if not (dur_str.isascii() and dur_str.isdigit()):
            raise ParseError(
                row.file, row.line, f"epoch_seconds must be a plain integer, got {dur_str!r}"
            )
        duration_s = int(dur_str)
        if duration_s <= 0:
            raise ParseError(row.file, row.line, f"non-positive epoch_seconds {duration_s}")
        if not (counts_str.isascii() and counts_str.isdigit()):
            raise ParseError(
                row.file,
                row.line,
                f"counts must be a non-negative plain integer, got {counts_str!r}",
            )
        epochs.append(
            Epoch(subject_id=subject_id, start=start, duration_s=duration_s, counts=int(counts_str))
        )
    return epochs


def _parse_timestamp(row: RawRow, text: str) -> datetime:
    normalized = text[:-1] + "+00:00" if text.endswith("Z") else text
    try:
        parsed = datetime.fromisoformat(normalized)
    except ValueError:
        raise ParseError(row.file, row.line, f"unparseable timestamp {text!r}") from None
    if parsed.tzinfo is None:
        raise ParseError(
            row.file,
            row.line,
            f"timestamp {text!r} lacks time-of-day or UTC offset "
            "(expected e.g. 2015-03-01T10:00:00+03:00)",
        )
    return parsed


def parse_biometrics(stream: IO[bytes]) -> list[BiometricMeasurement]:
    """Parse biometrics.csv; measurements are returned as written (no derivation)."""
    measurements: list[BiometricMeasurement] = []
    for row in _iter_rows(BIOMETRICS_FILENAME, stream, _BIOMETRICS_HEADER):
        subject_id, date_str, kind_str, value_str = row.fields
        if not subject_id:
            raise ParseError(row.file, row.line, "empty subject_id")
        try:
            day = date.fromisoformat(date_str)
        except ValueError:
            raise ParseError(
                row.file, row.line, f"bad date {date_str!r} (expected YYYY-MM-DD)"
            ) from None
        try:
            kind = BiometricKind.from_name(kind_str)
        except ValueError as exc:
            raise ParseError(row.file, row.line, str(exc)) from None
        try:
            value = float(value_str)
        except ValueError:
            raise ParseError(row.file, row.line, f"bad value {value_str!r}") from None
        if not math.isfinite(value) or value <= 0:
            raise ParseError(row.file, row.line, f"non-positive value {value_str!r}")
        measurements.append(
            BiometricMeasurement(subject_id=subject_id, date=day, kind=kind, value=value)
        )
    return measurements


def derive_bmi(measurements: Sequence[BiometricMeasurement]) -> list[BiometricMeasurement]:
    """Return the input plus synthesized BMI rows where derivable.

    For every (subject, date) with a weight_kg but no bmi, BMI is computed as
    weight / height² using the height measured that day or, failing that, the
    most recent prior height for the subject (unlimited carry-forward window).
    The result is rounded to 2 decimals, standard clinical BMI precision.
    Explicit bmi rows are never overwritten; inputs are never mutated. Derived
    rows are appended sorted by (subject, date), so the op is idempotent.
    """
    have_bmi = {
        (m.subject_id, m.date) for m in measurements if m.kind is BiometricKind.bmi
    }
    heights: dict[str, list[tuple[date, float]]] = {}
    for m in measurements:
        if m.kind is BiometricKind.height_m:
            heights.setdefault(m.subject_id, []).append((m.date, m.value))
    for series in heights.values():
        series.sort()
    height_dates = {sid: [d for d, _ in series] for sid, series in heights.items()}

    derived: list[BiometricMeasurement] = []
    for m in measurements:
        if m.kind is not BiometricKind.weight_kg or (m.subject_id, m.date) in have_bmi:
            continue
        series = heights.get(m.subject_id)
        if not series:
            continue
        idx = bisect_right(height_dates[m.subject_id], m.date) - 1
        if idx < 0:
            continue  # only heights after the weighing date: nothing to carry forward
        height = series[idx][1]
        derived.append(
            BiometricMeasurement(
                subject_id=m.subject_id,
                date=m.date,
                kind=BiometricKind.bmi,
                value=round(m.value / (height * height), 2),
            )
        )
    derived.sort(key=lambda m: (m.subject_id, m.date))
    return list(measurements) + derived


def render_subjects_csv(subjects: Sequence[Subject]) -> str:
    lines = [_SUBJECTS_HEADER]
    lines.extend(f"{_field(s.id)},{s.gender.value}" for s in subjects)
    return "\n".join(lines) + "\n"


def render_actigraphy_csv(epochs: Sequence[Epoch]) -> str:
    lines = [_ACTIGRAPHY_HEADER]
    lines.extend(
        f"{_field(e.subject_id)},{e.start.isoformat()},{e.duration_s},{e.counts}"
        for e in epochs
    )
    return "\n".join(lines) + "\n"


def render_biometrics_csv(measurements: Sequence[BiometricMeasurement]) -> str:
    lines = [_BIOMETRICS_HEADER]
    lines.extend(
        f"{_field(m.subject_id)},{m.date.isoformat()},{m.kind.value},{m.value!r}"
        for m in measurements
    )
    return "\n".join(lines) + "\n"


def _field(value: str) -> str:
    # The format has no quoting, so delimiter characters cannot be represented.
    if "," in value or "\n" in value or "\r" in value:
        raise ValueError(f"value not representable in unquoted CSV: {value!r}")
    return value


def load_dataset(
    data_dir: Path,
) -> tuple[list[Subject], list[Epoch], list[BiometricMeasurement]]:
    """Read and parse the three dataset files from a directory.

    Raises FileNotFoundError if any file is missing and ParseError on
    malformed content.
    """
    paths = {name: Path(data_dir) / name for name in DATA_FILENAMES}
    for path in paths.values():
        if not path.is_file():
            raise FileNotFoundError(f"missing data file: {path}")
    with open(paths[SUBJECTS_FILENAME], "rb") as fh:
        subjects = parse_subjects(fh)
    with open(paths[ACTIGRAPHY_FILENAME], "rb") as fh:
        epochs = parse_actigraphy(fh)
    with open(paths[BIOMETRICS_FILENAME], "rb") as fh:
        measurements = parse_biometrics(fh)
    return subjects, epochs, measurements
