"""Counts-per-minute cut-point classification into the four activity levels.

Bands are half-open and lower-inclusive:

    sedentary  [0, light_cpm)
    light      [light_cpm, moderate_cpm)
    moderate   [moderate_cpm, vigorous_cpm)
    vigorous   [vigorous_cpm, inf)

Default thresholds are the Evenson youth cut-points (100 / 2296 / 4012 cpm),
widely used for children's actigraphy; all three are configurable via the
``cutpoints.*`` configuration keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import ActivityLevel, ClassifiedEpoch, Epoch


@dataclass(frozen=True, slots=True)
class CutPointConfig:
    """Strictly increasing cpm thresholds separating the four levels."""

    light_cpm: float = 100.0
    moderate_cpm: float = 2296.0
    vigorous_cpm: float = 4012.0

    def __post_init__(self) -> None:
        if not (0 < self.light_cpm < self.moderate_cpm < self.vigorous_cpm):
            raise ValueError(
                "cut-points must satisfy 0 < light < moderate < vigorous, got "
                f"{self.light_cpm}, {self.moderate_cpm}, {self.vigorous_cpm}"
            )


DEFAULT_CUTPOINTS = CutPointConfig()


def counts_per_minute(epoch: Epoch) -> float:
    return epoch.counts * 60.0 / epoch.duration_s


def level_for_cpm(cpm: float, cfg: CutPointConfig) -> ActivityLevel:
    if cpm < cfg.light_cpm:
        return ActivityLevel.sedentary
    if cpm < cfg.moderate_cpm:
        return ActivityLevel.light
    if cpm < cfg.vigorous_cpm:
        return ActivityLevel.moderate
    return ActivityLevel.vigorous


def classify_epoch(epoch: Epoch, cfg: CutPointConfig = DEFAULT_CUTPOINTS) -> ClassifiedEpoch:
    return ClassifiedEpoch(
        subject_id=epoch.subject_id,
        start=epoch.start,
        duration_s=epoch.duration_s,
        counts=epoch.counts,
        level=level_for_cpm(counts_per_minute(epoch), cfg),
    )


def classify_all(
    epochs: Iterable[Epoch], cfg: CutPointConfig = DEFAULT_CUTPOINTS
) -> list[ClassifiedEpoch]:
    """Elementwise classification, input order preserved."""
    return [classify_epoch(epoch, cfg) for epoch in epochs]
