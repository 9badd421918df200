from horserace.benchmarks.autoregressive import (
    AUTOREGRESSIVE_LABEL,
    DEFAULT_MAX_LAG,
    DEFAULT_WINDOW_LENGTH,
    ar_panel,
    fit_ar,
    iterate_ar,
    select_lag_aic,
)
from horserace.benchmarks.random_walk import (
    DEFAULT_AVAILABILITY_LAG,
    RANDOM_WALK_LABEL,
    last_available,
    random_walk_panel,
)

__all__ = [
    "AUTOREGRESSIVE_LABEL",
    "DEFAULT_AVAILABILITY_LAG",
    "DEFAULT_MAX_LAG",
    "DEFAULT_WINDOW_LENGTH",
    "RANDOM_WALK_LABEL",
    "ar_panel",
    "fit_ar",
    "iterate_ar",
    "last_available",
    "random_walk_panel",
    "select_lag_aic",
]
