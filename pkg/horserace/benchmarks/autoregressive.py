import math
from collections.abc import Iterable, Sequence

import numpy as np

from horserace.benchmarks.random_walk import DEFAULT_AVAILABILITY_LAG, last_available
from horserace.config import logger
from horserace.types import ARFit, ForecastPanel, PanelKey, QuarterlyPeriod, RealizationSeries
from horserace.utils.errors import (
    CollinearWindowError,
    ComputationError,
    DegenerateWindowError,
    InsufficientDataError,
)
from horserace.utils.parallel import ordered_map

DEFAULT_WINDOW_LENGTH = 60
DEFAULT_MAX_LAG = 4
AUTOREGRESSIVE_LABEL = "ar"

# residual std at or below this fraction of the fitted sample's std counts as an exact fit
EXACT_FIT_RTOL = 1e-9


def _lag_design(y: np.ndarray, p: int, hold_back: int) -> tuple[np.ndarray, np.ndarray]:
    n = len(y)
    target = y[hold_back:]
    columns = [np.ones(n - hold_back)] + [y[hold_back - k : n - k] for k in range(1, p + 1)]
    return np.column_stack(columns), target


def fit_ar(window: Sequence[float] | np.ndarray, p: int, hold_back: int | None = None) -> ARFit:
    """
    Least-squares AR(p) with intercept.

    The first `hold_back` observations (default p) only serve as initial conditions, so candidates with
    different p can share one effective sample of len(window) - hold_back observations.
    AIC = n_eff * ln(RSS / n_eff) + 2 * (p + 1).
    """
    y = np.asarray(window, dtype=float)
    hold_back = p if hold_back is None else hold_back
    if p < 1:
        raise ValueError(f"lag order must be at least 1, got {p}")
    if hold_back < p:
        raise ValueError(f"hold_back ({hold_back}) must cover the lag order ({p})")

    n_eff = len(y) - hold_back
    if n_eff < p + 2:
        raise InsufficientDataError(
            f"insufficient observations: AR({p}) needs {hold_back + p + 2} values, window has {len(y)}"
        )
    if np.ptp(y) == 0:
        raise DegenerateWindowError("degenerate window: all values are equal")

    design, target = _lag_design(y, p, hold_back)
    if np.linalg.matrix_rank(design) < p + 1:
        raise CollinearWindowError(f"collinear window: AR({p}) regressors are linearly dependent")

    beta, *_ = np.linalg.lstsq(design, target, rcond=None)
    residuals = target - design @ beta
    residual_variance = float(residuals @ residuals) / n_eff

    if residual_variance <= (EXACT_FIT_RTOL * float(np.std(target))) ** 2:
        residual_variance = 0.0

    aic = -math.inf if residual_variance == 0 else n_eff * math.log(residual_variance) + 2 * (p + 1)
    return ARFit(
        lag_order=p,
        intercept=float(beta[0]),
        coefficients=tuple(float(b) for b in beta[1:]),
        residual_variance=residual_variance,
        window_length=len(y),
        n_eff=n_eff,
        aic=aic,
    )


def select_lag_aic(window: Sequence[float] | np.ndarray, p_max: int = DEFAULT_MAX_LAG) -> ARFit:
    """Fit p = 1..p_max on a common sample and keep the lowest AIC (ties go to the smaller p)."""
    best: ARFit | None = None
    last_error: CollinearWindowError | None = None

    for p in range(1, p_max + 1):
        try:
            fit = fit_ar(window, p, hold_back=p_max)
        except CollinearWindowError as exc:
            logger.debug(f"Skipping AR({p}) candidate: {exc}", extra={"lag_order": p})
            last_error = exc
            continue

        if best is None or fit.aic < best.aic:
            best = fit

    if best is None:
        assert last_error is not None
        raise last_error
    return best


def iterate_ar(fit: ARFit, history: Sequence[float] | np.ndarray, steps: int) -> list[float]:
    """Plug-in forecasts 1..steps ahead from the end of `history`, feeding iterates back as lags."""
    if len(history) < fit.lag_order:
        raise ValueError(f"AR({fit.lag_order}) recursion needs {fit.lag_order} starting values")

    buffer = [float(v) for v in history[len(history) - fit.lag_order :]]
    forecasts: list[float] = []
    for _ in range(steps):
        value = fit.intercept
        for lag, coefficient in enumerate(fit.coefficients, start=1):
            value += coefficient * buffer[-lag]
        forecasts.append(value)
        buffer.append(value)
    return forecasts


def _forecast_origin(
    real: RealizationSeries,
    origin: QuarterlyPeriod,
    horizons: list[int],
    window_length: int,
    p_max: int,
    availability_lag: int,
) -> dict[PanelKey, float]:
    latest = last_available(real, origin, availability_lag)
    available = 0 if latest is None else real.index_of(latest) + 1
    if latest is None or available < window_length:
        logger.warning(
            f"Omitting AR forecasts at {origin}: {available} observations available, {window_length} needed",
            extra={"origin": str(origin)},
        )
        return {}

    window = real.values[available - window_length : available]
    try:
        fit = select_lag_aic(window, p_max)
    except ComputationError as exc:
        logger.warning(f"Omitting AR forecasts at {origin}: {exc}", extra={"origin": str(origin)})
        return {}

    steps = max(origin + horizon - latest for horizon in horizons)
    path = iterate_ar(fit, window, max(steps, 0))

    forecasts: dict[PanelKey, float] = {}
    for horizon in horizons:
        ahead = origin + horizon - latest
        # targets that are already published echo the realization
        forecasts[(origin, horizon)] = path[ahead - 1] if ahead > 0 else real.get(origin + horizon)
    return forecasts


def ar_panel(
    real: RealizationSeries,
    origins: Iterable[QuarterlyPeriod] | None,
    horizons: Iterable[int],
    window_length: int = DEFAULT_WINDOW_LENGTH,
    p_max: int = DEFAULT_MAX_LAG,
    availability_lag: int = DEFAULT_AVAILABILITY_LAG,
    workers: int = 1,
    source_label: str = AUTOREGRESSIVE_LABEL,
) -> ForecastPanel:
    """
    Rolling-window AR benchmark: at each origin, select the lag by AIC on the latest `window_length`
    available observations and iterate the fitted recursion out to every horizon.

    Origins without enough history are omitted with a warning. Per-origin fits run on `workers` threads;
    the result does not depend on the worker count.
    """
    horizons = sorted(set(horizons))
    origins = real.periods() if origins is None else list(origins)
    if window_length < 2 * p_max + 2:
        raise ValueError(f"window_length {window_length} is too short for p_max {p_max}")

    def forecast(origin: QuarterlyPeriod) -> dict[PanelKey, float]:
        return _forecast_origin(real, origin, horizons, window_length, p_max, availability_lag)

    entries: dict[PanelKey, float] = {}
    for forecasts in ordered_map(forecast, origins, workers):
        entries.update(forecasts)
    return ForecastPanel(source_label, entries)
