from importlib.metadata import version

from .benchmarks import ar_panel, fit_ar, random_walk_panel, select_lag_aic
from .inference import compare_forecasts, fixed_b_cv, fluctuation_dm, mz_regression, simulate_dm_size, test_dm
from .io import align_survey, read_forecast_panel, read_realizations, read_survey
from .losses import loss, loss_series
from .panels import build_error_panel, restrict_panel, split_subsamples
from .summary import summarize
from .types import ErrorPanel, ForecastPanel, LossSpec, QuarterlyPeriod, RealizationSeries

__version__ = version("horserace")

__all__ = [
    "__version__",
    "ErrorPanel",
    "ForecastPanel",
    "LossSpec",
    "QuarterlyPeriod",
    "RealizationSeries",
    "align_survey",
    "ar_panel",
    "build_error_panel",
    "compare_forecasts",
    "fit_ar",
    "fixed_b_cv",
    "fluctuation_dm",
    "loss",
    "loss_series",
    "mz_regression",
    "random_walk_panel",
    "read_forecast_panel",
    "read_realizations",
    "read_survey",
    "restrict_panel",
    "select_lag_aic",
    "simulate_dm_size",
    "split_subsamples",
    "summarize",
    "test_dm",
]
