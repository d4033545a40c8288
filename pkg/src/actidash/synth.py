"""Deterministic synthetic cohort generator.

The study's real dataset is private, so tests and demos run on generated
cohorts built from behavioral archetypes. Generation is reproducible: the
pseudo-random source is Python's ``random.Random`` (Mersenne Twister) with a
64-bit seed, consuming only ``random()`` draws (the one method CPython
guarantees sequence-stable across versions), and iteration order is fixed,
so identical inputs yield byte-identical files.

Per worn minute, counts are drawn uniformly from [0, 2*mean_cpm) for the
archetype's (weekday/weekend, day-part) mean, giving that mean in
expectation. Non-wear days are whole days of zero counts. Weekday/weekend
is reckoned with a Friday/Saturday weekend at UTC+03:00, matching the
default analysis calendar; timestamps carry the +03:00 offset.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path
from random import Random
from typing import Mapping, Sequence

from .analytics import DEFAULT_DAYPARTS, DayPart
from .ingest import (
    ACTIGRAPHY_FILENAME,
    BIOMETRICS_FILENAME,
    SUBJECTS_FILENAME,
)
from .model import Gender

_WEEKEND_DAYS = frozenset({4, 5})  # fri, sat — baked into the generated data
_UTC_OFFSET_SUFFIX = "+03:00"
_EPOCH_SECONDS = 60
_MINUTES_PER_DAY = 1440

GOLDEN_SEED = 20150301
GOLDEN_START = date(2015, 3, 1)  # a Sunday: 20 weekdays + 8 weekend days
GOLDEN_DAYS = 28


class Archetype(enum.Enum):
    weekend_active = "weekend_active"
    weekday_active = "weekday_active"
    mostly_sedentary = "mostly_sedentary"
    non_wearer = "non_wearer"


@dataclass(frozen=True, slots=True)
class ArchetypeProfile:
    """Behavioral shape of one archetype.

    ``mean_cpm`` maps (is_weekend, day-part) to the expected counts-per-minute;
    biometric fields give week-0 values and per-week drifts (weekly jitter is
    bounded to +/-0.05, small enough to preserve each drift's direction).
    """

    mean_cpm: Mapping[tuple[bool, DayPart], float]
    non_wear_day_prob: float
    height_m: float
    weight_kg_start: float
    weight_kg_weekly_drift: float
    body_fat_pct_start: float
    body_fat_pct_weekly_drift: float


def _cpm(
    weekday: tuple[float, float, float, float], weekend: tuple[float, float, float, float]
) -> dict[tuple[bool, DayPart], float]:
    parts = (DayPart.night, DayPart.morning, DayPart.afternoon, DayPart.evening)
    table = {(False, part): mean for part, mean in zip(parts, weekday)}
    table.update({(True, part): mean for part, mean in zip(parts, weekend)})
    return table


ARCHETYPE_PROFILES: dict[Archetype, ArchetypeProfile] = {
    Archetype.weekend_active: ArchetypeProfile(
        mean_cpm=_cpm(weekday=(3, 300, 500, 200), weekend=(3, 1500, 3200, 800)),
        non_wear_day_prob=0.0,
        height_m=1.55,
        weight_kg_start=52.0,
        weight_kg_weekly_drift=-0.2,
        body_fat_pct_start=28.0,
        body_fat_pct_weekly_drift=0.3,
    ),
    Archetype.weekday_active: ArchetypeProfile(
        mean_cpm=_cpm(weekday=(3, 800, 3000, 1200), weekend=(3, 250, 500, 200)),
        non_wear_day_prob=0.0,
        height_m=1.58,
        weight_kg_start=56.0,
        weight_kg_weekly_drift=-0.1,
        body_fat_pct_start=26.0,
        body_fat_pct_weekly_drift=0.25,
    ),
    Archetype.mostly_sedentary: ArchetypeProfile(
        mean_cpm=_cpm(weekday=(3, 400, 1600, 300), weekend=(3, 300, 900, 300)),
        non_wear_day_prob=0.0,
        height_m=1.60,
        weight_kg_start=80.0,
        weight_kg_weekly_drift=0.15,
        body_fat_pct_start=36.0,
        body_fat_pct_weekly_drift=0.4,
    ),
    Archetype.non_wearer: ArchetypeProfile(
        mean_cpm=_cpm(weekday=(3, 400, 600, 300), weekend=(3, 300, 500, 250)),
        non_wear_day_prob=0.5,
        height_m=1.50,
        weight_kg_start=62.0,
        weight_kg_weekly_drift=0.05,
        body_fat_pct_start=33.0,
        body_fat_pct_weekly_drift=0.35,
    ),
}


@dataclass(frozen=True, slots=True)
class CohortFiles:
    """The three generated file bodies, ready to write to a data directory."""

    subjects_csv: str
    actigraphy_csv: str
    biometrics_csv: str

    def write_to(self, out_dir: Path) -> None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / SUBJECTS_FILENAME).write_text(self.subjects_csv, encoding="utf-8")
        (out_dir / ACTIGRAPHY_FILENAME).write_text(self.actigraphy_csv, encoding="utf-8")
        (out_dir / BIOMETRICS_FILENAME).write_text(self.biometrics_csv, encoding="utf-8")


def generate_cohort(
    seed: int,
    spec: Sequence[tuple[Archetype, int]],
    start_date: date,
    n_days: int,
) -> CohortFiles:
    """Generate a cohort of auto-named subjects ("1", "2", ... with alternating
    gender) from (archetype, count) pairs."""
    roster: list[tuple[str, Gender, Archetype]] = []
    for archetype, count in spec:
        for _ in range(count):
            index = len(roster) + 1
            gender = Gender.male if index % 2 == 1 else Gender.female
            roster.append((str(index), gender, archetype))
    return generate_roster(seed, roster, start_date, n_days)


def generate_roster(
    seed: int,
    roster: Sequence[tuple[str, Gender, Archetype]],
    start_date: date,
    n_days: int,
) -> CohortFiles:
    """Generate the three file bodies for an explicit subject roster."""
    if not roster:
        raise ValueError("empty cohort spec")
    if n_days < 1:
        raise ValueError(f"n_days must be >= 1, got {n_days}")

    rng = Random(seed)
    time_suffixes = [
        f"T{minute // 60:02d}:{minute % 60:02d}:00{_UTC_OFFSET_SUFFIX}"
        for minute in range(_MINUTES_PER_DAY)
    ]
    part_of_minute = [
        DEFAULT_DAYPARTS.part_of(minute // 60) for minute in range(_MINUTES_PER_DAY)
    ]

    subject_lines = ["subject_id,gender"]
    epoch_lines = ["subject_id,timestamp,epoch_seconds,counts"]
    biometric_lines = ["subject_id,date,kind,value"]

    for subject_id, gender, archetype in roster:
        subject_lines.append(f"{subject_id},{gender.value}")
        profile = ARCHETYPE_PROFILES[archetype]

        for day_index in range(n_days):
            day = start_date + timedelta(days=day_index)
            day_iso = day.isoformat()
            is_weekend = day.weekday() in _WEEKEND_DAYS
            if rng.random() < profile.non_wear_day_prob:
                for minute in range(_MINUTES_PER_DAY):
                    epoch_lines.append(
                        f"{subject_id},{day_iso}{time_suffixes[minute]},{_EPOCH_SECONDS},0"
                    )
                continue
            for minute in range(_MINUTES_PER_DAY):
                mean = profile.mean_cpm[(is_weekend, part_of_minute[minute])]
                counts = int(mean * 2.0 * rng.random())
                epoch_lines.append(
                    f"{subject_id},{day_iso}{time_suffixes[minute]},{_EPOCH_SECONDS},{counts}"
                )

        for week in range((n_days - 1) // 7 + 1):
            measured = start_date + timedelta(days=7 * week)
            if week == 0:
                # height once per subject: derivation carries it forward
                biometric_lines.append(
                    f"{subject_id},{measured.isoformat()},height_m,{profile.height_m!r}"
                )
            weight = round(
                profile.weight_kg_start
                + profile.weight_kg_weekly_drift * week
                + (rng.random() - 0.5) * 0.1,
                2,
            )
            fat = round(
                profile.body_fat_pct_start
                + profile.body_fat_pct_weekly_drift * week
                + (rng.random() - 0.5) * 0.1,
                2,
            )
            biometric_lines.append(f"{subject_id},{measured.isoformat()},weight_kg,{weight!r}")
            biometric_lines.append(f"{subject_id},{measured.isoformat()},body_fat_pct,{fat!r}")

    return CohortFiles(
        subjects_csv="\n".join(subject_lines) + "\n",
        actigraphy_csv="\n".join(epoch_lines) + "\n",
        biometrics_csv="\n".join(biometric_lines) + "\n",
    )


GOLDEN_ROSTER: tuple[tuple[str, Gender, Archetype], ...] = (
    ("84", Gender.male, Archetype.weekend_active),
    ("82", Gender.male, Archetype.mostly_sedentary),
    ("90", Gender.female, Archetype.non_wearer),
    ("91", Gender.female, Archetype.weekday_active),
)


def golden_scenario() -> CohortFiles:
    """The pinned comparison scenario: weekend-active subject 84 vs
    mostly-sedentary, higher-BMI subject 82, plus a non-wearer and a
    weekday-active subject to give the cohort statistics some spread."""
    return generate_roster(GOLDEN_SEED, GOLDEN_ROSTER, GOLDEN_START, GOLDEN_DAYS)
