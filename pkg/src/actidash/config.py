"""Flat key=value configuration shared by the service and the CLI.

Recognized keys (defaults in parentheses):

    cutpoints.light_cpm      (100)      cutpoints.moderate_cpm   (2296)
    cutpoints.vigorous_cpm   (4012)
    calendar.timezone        (+03:00)   fixed offset or IANA zone name
    calendar.weekend_days    (fri,sat)  comma list of mon..sun
    flags.epsilon_hours      (0.1)      margin for activity comparison flags
    rules.weekend_ratio      (0.8)      R1 weekend/weekday MVPA threshold
    http.cors_allow_all      (true)

Lines starting with ``#`` and blank lines are ignored; unknown keys are
rejected so typos fail loudly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import timedelta, timezone, tzinfo
from pathlib import Path
from zoneinfo import ZoneInfo

from .analytics import WEEKDAY_NAMES, CalendarConfig, DayPartConfig
from .classify import CutPointConfig

_OFFSET_RE = re.compile(r"([+-])(\d{2}):(\d{2})")


@dataclass(frozen=True, slots=True)
class AppConfig:
    cutpoints: CutPointConfig = field(default_factory=CutPointConfig)
    calendar: CalendarConfig = field(default_factory=CalendarConfig)
    dayparts: DayPartConfig = field(default_factory=DayPartConfig)
    epsilon_hours: float = 0.1
    weekend_ratio: float = 0.8
    cors_allow_all: bool = True


DEFAULT_CONFIG = AppConfig()


def parse_timezone(text: str) -> tzinfo:
    """A fixed UTC offset like ``+03:00`` or an IANA zone name."""
    match = _OFFSET_RE.fullmatch(text)
    if match:
        sign = 1 if match.group(1) == "+" else -1
        delta = timedelta(hours=int(match.group(2)), minutes=int(match.group(3)))
        return timezone(sign * delta)
    try:
        return ZoneInfo(text)
    except Exception:
        raise ValueError(f"unknown timezone {text!r}") from None


def format_timezone(tz: tzinfo) -> str:
    if isinstance(tz, ZoneInfo):
        return tz.key
    offset = tz.utcoffset(None) or timedelta(0)
    total = int(offset.total_seconds())
    sign = "+" if total >= 0 else "-"
    total = abs(total)
    return f"{sign}{total // 3600:02d}:{total % 3600 // 60:02d}"


def parse_weekend_days(text: str) -> frozenset[int]:
    days = set()
    for token in text.split(","):
        name = token.strip().lower()
        if name not in WEEKDAY_NAMES:
            raise ValueError(f"unknown weekday name {name!r} (expected mon..sun)")
        days.add(WEEKDAY_NAMES.index(name))
    return frozenset(days)


def format_weekend_days(days: frozenset[int]) -> list[str]:
    return [WEEKDAY_NAMES[d] for d in sorted(days)]


def parse_config_text(text: str, base: AppConfig = DEFAULT_CONFIG) -> AppConfig:
    """Apply key=value lines on top of ``base``; raises ValueError on bad input."""
    values: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {line_no}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()

    def take_float(key: str, current: float) -> float:
        if key not in values:
            return current
        raw = values.pop(key)
        try:
            return float(raw)
        except ValueError:
            raise ValueError(f"config key {key}: not a number: {raw!r}") from None

    cutpoints = CutPointConfig(
        light_cpm=take_float("cutpoints.light_cpm", base.cutpoints.light_cpm),
        moderate_cpm=take_float("cutpoints.moderate_cpm", base.cutpoints.moderate_cpm),
        vigorous_cpm=take_float("cutpoints.vigorous_cpm", base.cutpoints.vigorous_cpm),
    )
    tz = base.calendar.timezone
    if "calendar.timezone" in values:
        tz = parse_timezone(values.pop("calendar.timezone"))
    weekend = base.calendar.weekend_days
    if "calendar.weekend_days" in values:
        weekend = parse_weekend_days(values.pop("calendar.weekend_days"))
    calendar = CalendarConfig(timezone=tz, weekend_days=weekend)

    epsilon = take_float("flags.epsilon_hours", base.epsilon_hours)
    ratio = take_float("rules.weekend_ratio", base.weekend_ratio)
    cors = base.cors_allow_all
    if "http.cors_allow_all" in values:
        token = values.pop("http.cors_allow_all").lower()
        if token not in ("true", "false"):
            raise ValueError(f"config key http.cors_allow_all: expected true/false, got {token!r}")
        cors = token == "true"

    if values:
        unknown = ", ".join(sorted(values))
        raise ValueError(f"unknown config keys: {unknown}")
    return replace(
        base,
        cutpoints=cutpoints,
        calendar=calendar,
        epsilon_hours=epsilon,
        weekend_ratio=ratio,
        cors_allow_all=cors,
    )


def load_config(path: Path | None) -> AppConfig:
    if path is None:
        return DEFAULT_CONFIG
    return parse_config_text(Path(path).read_text(encoding="utf-8"))


def config_dict(cfg: AppConfig) -> dict:
    """The effective configuration as echoed by the service's meta endpoint."""
    return {
        "cutpoints": {
            "light_cpm": cfg.cutpoints.light_cpm,
            "moderate_cpm": cfg.cutpoints.moderate_cpm,
            "vigorous_cpm": cfg.cutpoints.vigorous_cpm,
        },
        "calendar": {
            "timezone": format_timezone(cfg.calendar.timezone),
            "weekend_days": format_weekend_days(cfg.calendar.weekend_days),
        },
        "flags": {"epsilon_hours": cfg.epsilon_hours},
        "rules": {"weekend_ratio": cfg.weekend_ratio},
    }
