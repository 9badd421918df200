from collections.abc import Iterable

from horserace.config import logger
from horserace.types import ForecastPanel, PanelKey, QuarterlyPeriod, RealizationSeries

DEFAULT_AVAILABILITY_LAG = 1
RANDOM_WALK_LABEL = "rw"


def last_available(real: RealizationSeries, origin: QuarterlyPeriod, availability_lag: int) -> QuarterlyPeriod | None:
    """Latest period whose realization is published when forecasting at `origin`."""
    if availability_lag < 0:
        raise ValueError(f"availability_lag must be nonnegative, got {availability_lag}")

    latest = min(origin - availability_lag, real.end)
    if latest < real.start:
        return None
    return latest


def random_walk_panel(
    real: RealizationSeries,
    origins: Iterable[QuarterlyPeriod] | None,
    horizons: Iterable[int],
    availability_lag: int = DEFAULT_AVAILABILITY_LAG,
    source_label: str = RANDOM_WALK_LABEL,
) -> ForecastPanel:
    """Forecast every horizon with the latest available realization."""
    horizons = sorted(set(horizons))
    entries: dict[PanelKey, float] = {}
    skipped = 0

    for origin in real.periods() if origins is None else origins:
        latest = last_available(real, origin, availability_lag)
        if latest is None:
            skipped += 1
            continue

        value = real.get(latest)
        for horizon in horizons:
            entries[(origin, horizon)] = value

    if skipped:
        logger.debug(
            f"Random walk skipped {skipped} origins before the first realization", extra={"source": source_label}
        )
    return ForecastPanel(source_label, entries)
