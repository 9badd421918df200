from horserace.inference.critical_values import (
    DEFAULT_SEED,
    FIXED_B_BARTLETT_COEFFICIENTS,
    fixed_b_cv,
    normal_cv,
    simulate_fixed_b_cv,
)
from horserace.inference.dm import (
    DEFAULT_CV_SOURCE,
    MIN_DM_OBSERVATIONS,
    compare_forecasts,
    critical_values,
    paired_errors,
    test_dm,
)
from horserace.inference.fluctuation import fluctuation_dm
from horserace.inference.lrv import bandwidth_rule, bartlett_lrv
from horserace.inference.montecarlo import simulate_dm_size
from horserace.inference.rationality import mz_regression

__all__ = [
    "DEFAULT_CV_SOURCE",
    "DEFAULT_SEED",
    "FIXED_B_BARTLETT_COEFFICIENTS",
    "MIN_DM_OBSERVATIONS",
    "bandwidth_rule",
    "bartlett_lrv",
    "compare_forecasts",
    "critical_values",
    "fixed_b_cv",
    "fluctuation_dm",
    "mz_regression",
    "normal_cv",
    "paired_errors",
    "simulate_dm_size",
    "simulate_fixed_b_cv",
    "test_dm",
]
