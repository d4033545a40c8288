"""Cut-point classification: band edges, monotonicity, exhaustiveness."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from actidash.classify import (
    DEFAULT_CUTPOINTS,
    CutPointConfig,
    classify_all,
    classify_epoch,
    counts_per_minute,
    level_for_cpm,
)
from actidash.model import ActivityLevel

from conftest import make_epoch


class TestCountsPerMinute:
    def test_zero_counts(self):
        assert counts_per_minute(make_epoch(counts=0, duration_s=45)) == 0.0

    def test_identity_at_one_minute(self):
        assert counts_per_minute(make_epoch(counts=100, duration_s=60)) == 100.0

    def test_linear_scaling(self):
        assert counts_per_minute(make_epoch(counts=50, duration_s=30)) == 100.0


class TestBands:
    @pytest.mark.parametrize(
        "cpm,expected",
        [
            (0.0, ActivityLevel.sedentary),
            (99.999, ActivityLevel.sedentary),
            (100.0, ActivityLevel.light),
            (2295.999, ActivityLevel.light),
            (2296.0, ActivityLevel.moderate),
            (4011.999, ActivityLevel.moderate),
            (4012.0, ActivityLevel.vigorous),
        ],
    )
    def test_default_band_edges(self, cpm, expected):
        assert level_for_cpm(cpm, DEFAULT_CUTPOINTS) is expected

    def test_classify_epoch_uses_cpm_not_counts(self):
        # 2006 counts over 30 s = 4012 cpm -> vigorous
        epoch = make_epoch(counts=2006, duration_s=30)
        assert classify_epoch(epoch).level is ActivityLevel.vigorous

    def test_invalid_config_rejected(self):
        with pytest.raises(ValueError):
            CutPointConfig(light_cpm=100, moderate_cpm=100, vigorous_cpm=4012)
        with pytest.raises(ValueError):
            CutPointConfig(light_cpm=0, moderate_cpm=10, vigorous_cpm=20)


class TestClassifyAll:
    def test_empty(self):
        assert classify_all([]) == []

    def test_single_zero_epoch(self):
        [ce] = classify_all([make_epoch(counts=0)])
        assert ce.level is ActivityLevel.sedentary

    def test_order_preserved_and_elementwise(self):
        epochs = [
            make_epoch(counts=5000),
            make_epoch(counts=0, start="2015-03-02T10:01:00+03:00"),
            make_epoch(counts=150, start="2015-03-02T10:02:00+03:00"),
        ]
        forward = classify_all(epochs)
        assert [c.level for c in forward] == [
            ActivityLevel.vigorous,
            ActivityLevel.sedentary,
            ActivityLevel.light,
        ]
        # permuting input permutes output identically
        reordered = classify_all(epochs[::-1])
        assert reordered == forward[::-1]


_configs = st.builds(
    lambda a, b, c: CutPointConfig(a, a + b, a + b + c),
    st.floats(min_value=0.1, max_value=1e4),
    st.floats(min_value=0.1, max_value=1e4),
    st.floats(min_value=0.1, max_value=1e4),
)


@given(
    counts=st.tuples(st.integers(0, 10**6), st.integers(0, 10**6)),
    duration=st.integers(1, 3600),
    cfg=_configs,
)
def test_monotone_in_counts(counts, duration, cfg):
    low, high = min(counts), max(counts)
    level_low = classify_epoch(make_epoch(counts=low, duration_s=duration), cfg).level
    level_high = classify_epoch(make_epoch(counts=high, duration_s=duration), cfg).level
    assert level_low <= level_high


@given(cpm=st.floats(min_value=0, max_value=1e9, allow_nan=False), cfg=_configs)
def test_every_cpm_maps_to_exactly_one_level(cpm, cfg):
    level = level_for_cpm(cpm, cfg)
    assert isinstance(level, ActivityLevel)
    # bands partition [0, inf): membership in the reported band is exact
    bounds = {
        ActivityLevel.sedentary: (0.0, cfg.light_cpm),
        ActivityLevel.light: (cfg.light_cpm, cfg.moderate_cpm),
        ActivityLevel.moderate: (cfg.moderate_cpm, cfg.vigorous_cpm),
        ActivityLevel.vigorous: (cfg.vigorous_cpm, float("inf")),
    }
    lo, hi = bounds[level]
    assert lo <= cpm < hi


@given(cfg=_configs, duration=st.integers(1, 3600))
def test_zero_cpm_is_sedentary_under_every_config(cfg, duration):
    assert classify_epoch(make_epoch(counts=0, duration_s=duration), cfg).level is (
        ActivityLevel.sedentary
    )
