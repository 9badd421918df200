import math

import numpy as np
import pytest

from horserace.types import ForecastPanel, LossSpec, MonthlyPeriod, QuarterlyPeriod, RealizationSeries, SurveyRecord


class TestQuarterlyPeriod:
    @pytest.mark.parametrize("token", ["2014Q1", "2014.Q1", "2014-Q1", " 2014q1 "])
    def test_parse_accepts_common_spellings(self, token: str):
        assert QuarterlyPeriod.parse(token) == QuarterlyPeriod(2014, 1)

    @pytest.mark.parametrize("token", ["2014Q5", "14Q1", "2014", "Q1 2014", ""])
    def test_parse_rejects_malformed_tokens(self, token: str):
        with pytest.raises(ValueError, match="invalid quarterly period"):
            QuarterlyPeriod.parse(token)

    def test_quarter_out_of_range(self):
        with pytest.raises(ValueError, match="quarter must be in 1..4"):
            QuarterlyPeriod(2014, 0)

    def test_str_is_canonical(self):
        assert str(QuarterlyPeriod.parse("2022.Q3")) == "2022Q3"

    def test_arithmetic_crosses_year_boundaries(self):
        q = QuarterlyPeriod(2014, 4)

        assert q + 1 == QuarterlyPeriod(2015, 1)
        assert q - 4 == QuarterlyPeriod(2013, 4)
        assert 2 + q == QuarterlyPeriod(2015, 2)
        assert QuarterlyPeriod(2023, 4) - QuarterlyPeriod(2014, 1) == 39

    def test_ordering_is_chronological(self):
        periods = [QuarterlyPeriod(2015, 1), QuarterlyPeriod(2014, 4), QuarterlyPeriod(2014, 1)]

        assert sorted(periods) == [QuarterlyPeriod(2014, 1), QuarterlyPeriod(2014, 4), QuarterlyPeriod(2015, 1)]

    def test_range_to_is_inclusive(self):
        span = QuarterlyPeriod(2014, 1).range_to(QuarterlyPeriod(2023, 4))

        assert len(span) == 40
        assert span[0] == QuarterlyPeriod(2014, 1)
        assert span[-1] == QuarterlyPeriod(2023, 4)
        assert QuarterlyPeriod(2015, 1).range_to(QuarterlyPeriod(2014, 4)) == []

    def test_ordinal_round_trip(self):
        for ordinal in range(8000, 8100):
            assert QuarterlyPeriod.from_ordinal(ordinal).ordinal == ordinal


def test_monthly_period_maps_to_quarter():
    assert MonthlyPeriod(2022, 8).quarter == QuarterlyPeriod(2022, 3)
    assert MonthlyPeriod(2022, 11).quarter == QuarterlyPeriod(2022, 4)
    assert str(MonthlyPeriod(2022, 5)) == "2022-05"

    with pytest.raises(ValueError, match="month must be in 1..12"):
        MonthlyPeriod(2022, 13)


class TestRealizationSeries:
    @pytest.fixture()
    def series(self) -> RealizationSeries:
        return RealizationSeries(QuarterlyPeriod(2014, 1), (1.9, 1.7, 1.5))

    def test_positions(self, series: RealizationSeries):
        assert series.end == QuarterlyPeriod(2014, 3)
        assert len(series) == 3
        assert series.get(QuarterlyPeriod(2014, 2)) == 1.7
        assert series.get(QuarterlyPeriod(2013, 4)) is None
        assert series.index_of(QuarterlyPeriod(2014, 4)) is None
        assert np.array_equal(series.to_array(), [1.9, 1.7, 1.5])

    def test_non_finite_values_are_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            RealizationSeries(QuarterlyPeriod(2014, 1), (1.0, math.nan))

    def test_empty_series_is_rejected(self):
        with pytest.raises(ValueError, match="at least one value"):
            RealizationSeries(QuarterlyPeriod(2014, 1), ())


class TestForecastPanel:
    def test_negative_horizon_is_rejected(self):
        with pytest.raises(ValueError, match="negative horizon"):
            ForecastPanel("boe", {(QuarterlyPeriod(2014, 1), -1): 2.0})

    def test_iteration_is_sorted_by_origin_then_horizon(self):
        q1, q2 = QuarterlyPeriod(2014, 1), QuarterlyPeriod(2014, 2)
        panel = ForecastPanel("boe", {(q2, 0): 3.0, (q1, 4): 2.0, (q1, 0): 1.0})

        assert [key for key, _ in panel] == [(q1, 0), (q1, 4), (q2, 0)]
        assert panel.horizons() == [0, 4]
        assert panel.origins() == [q1, q2]
        assert panel.get(q1, 4) == 2.0
        assert panel.get(q2, 4) is None

    def test_entries_are_read_only(self):
        panel = ForecastPanel("boe", {(QuarterlyPeriod(2014, 1), 0): 1.0})

        with pytest.raises(TypeError):
            panel.entries[(QuarterlyPeriod(2014, 2), 0)] = 2.0  # type: ignore[index]


def test_survey_record_target_year_rule():
    SurveyRecord(MonthlyPeriod(2022, 11), 2023, 3.0)

    with pytest.raises(ValueError, match="survey target year"):
        SurveyRecord(MonthlyPeriod(2022, 11), 2024, 3.0)


class TestLossSpec:
    def test_parse_linex(self):
        spec = LossSpec.parse("linex(0.5)")

        assert spec == LossSpec("linex", 0.5)
        assert spec.label == "linex(0.5)"
        assert LossSpec.parse("LINEX( -0.5 )").label == "linex(-0.5)"

    def test_parse_plain_kinds(self):
        assert LossSpec.parse("Quadratic") == LossSpec("quadratic")
        assert LossSpec.parse("absolute").label == "absolute"

    def test_alpha_is_dropped_for_symmetric_losses(self):
        assert LossSpec("quadratic", 2.0).alpha is None

    @pytest.mark.parametrize("token", ["huber", "linex(0)", "linex(abc)", "linex()"])
    def test_invalid_specs(self, token: str):
        with pytest.raises(ValueError):
            LossSpec.parse(token)
