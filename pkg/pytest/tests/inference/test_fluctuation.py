import math

import numpy as np
import pytest

from horserace.inference import compare_forecasts, fluctuation_dm
from horserace.types import ErrorPanel, LossSpec, QuarterlyPeriod
from horserace.utils.errors import InsufficientDataError

QUADRATIC = LossSpec("quadratic")


def test_one_outcome_per_window(make_panel, rng: np.random.Generator):
    a = make_panel("a", rng.normal(size=40))
    b = make_panel("b", rng.normal(size=40))

    points = fluctuation_dm(a, b, QUADRATIC, horizon=1, window_length=20)

    assert len(points) == 21
    assert points[0].end == QuarterlyPeriod(2018, 4)
    assert points[-1].end == QuarterlyPeriod(2023, 4)
    assert all(point.outcome is not None and point.outcome.n == 20 for point in points)


def test_single_window_equals_the_full_comparison(make_panel, rng: np.random.Generator):
    a = make_panel("a", rng.normal(size=24))
    b = make_panel("b", rng.normal(size=24))

    (point,) = fluctuation_dm(a, b, QUADRATIC, horizon=1, window_length=24)

    assert point.outcome == compare_forecasts(a, b, QUADRATIC, horizon=1)


def test_statistic_changes_sign_across_a_break(make_panel):
    t = np.arange(40)
    first = np.where(t < 20, 0.1 * np.cos(t), 3.0 + 0.1 * np.cos(t))
    second = 1.0 + 0.1 * np.sin(t)

    points = fluctuation_dm(make_panel("a", first), make_panel("b", second), QUADRATIC, horizon=1, window_length=10)
    statistics = [point.outcome.statistic for point in points]

    assert statistics[0] < 0
    assert statistics[-1] > 0


def test_degenerate_windows_are_reported_not_raised(make_panel, rng: np.random.Generator):
    errors = rng.normal(size=30)

    points = fluctuation_dm(make_panel("a", errors), make_panel("b", errors), QUADRATIC, horizon=1, window_length=10)

    assert len(points) == 21
    assert all(point.outcome is None and point.reason == "degenerate_differential" for point in points)


def test_window_longer_than_the_span(make_panel, rng: np.random.Generator):
    a = make_panel("a", rng.normal(size=15))
    b = make_panel("b", rng.normal(size=15))

    with pytest.raises(InsufficientDataError, match="exceeds the 15 consecutive common targets"):
        fluctuation_dm(a, b, QUADRATIC, horizon=1, window_length=20)


def test_window_too_short_for_inference(make_panel, rng: np.random.Generator):
    a = make_panel("a", rng.normal(size=15))

    with pytest.raises(InsufficientDataError):
        fluctuation_dm(a, a, QUADRATIC, horizon=1, window_length=5)


def test_rolling_statistics_stay_finite(make_panel, rng: np.random.Generator):
    a = make_panel("a", rng.normal(size=40))
    b = make_panel("b", rng.normal(size=40))

    for spec in (QUADRATIC, LossSpec("absolute"), LossSpec("linex", -0.5)):
        points = fluctuation_dm(a, b, spec, horizon=1, window_length=12)
        assert all(math.isfinite(point.outcome.statistic) for point in points)


def test_windows_restart_after_a_missing_quarter(make_panel, rng: np.random.Generator):
    a = make_panel("a", rng.normal(size=40))
    full = make_panel("b", rng.normal(size=40))
    gap = QuarterlyPeriod(2016, 1)
    b = ErrorPanel("b", {key: value for key, value in full.entries.items() if key[0] != gap})

    points = fluctuation_dm(a, b, QUADRATIC, horizon=1, window_length=10)

    assert len(points) == 22
    assert points[0].end == QuarterlyPeriod(2018, 3)
    assert points[0].outcome == compare_forecasts(a, b, QUADRATIC, 1, (gap + 1, QuarterlyPeriod(2018, 3)))
    assert all(point.outcome.n == 10 for point in points)


def test_gaps_can_leave_no_full_window(make_panel, rng: np.random.Generator):
    a = make_panel("a", rng.normal(size=30))
    full = make_panel("b", rng.normal(size=30))
    b = ErrorPanel("b", {key: value for key, value in full.entries.items() if key[0] != QuarterlyPeriod(2017, 3)})

    with pytest.raises(InsufficientDataError, match="exceeds the 15 consecutive common targets"):
        fluctuation_dm(a, b, QUADRATIC, horizon=1, window_length=16)
