from horserace.config import logger
from horserace.types import ErrorPanel, ForecastPanel, PanelKey, QuarterlyPeriod, RealizationSeries
from horserace.utils.errors import EmptySubsampleError


def build_error_panel(panel: ForecastPanel, real: RealizationSeries) -> ErrorPanel:
    """
    Pair every forecast with the realization of its target period (origin + horizon).

    Errors are realization minus forecast. Forecasts whose target has no realization are dropped.
    """
    entries: dict[PanelKey, float] = {}
    for (origin, horizon), forecast in panel:
        target = origin + horizon
        realized = real.get(target)
        if realized is None:
            continue
        entries[(target, horizon)] = realized - forecast

    dropped = len(panel) - len(entries)
    if dropped:
        logger.debug(
            f"Dropped {dropped} forecasts without a realization",
            extra={"source": panel.source, "kept": len(entries)},
        )
    return ErrorPanel(panel.source, entries)


def split_subsamples(panel: ErrorPanel, cut: QuarterlyPeriod) -> tuple[ErrorPanel, ErrorPanel]:
    """Split into targets <= cut and targets > cut. Both halves must be nonempty."""
    span = panel.span()
    if span is None or not span[0] <= cut < span[1]:
        raise EmptySubsampleError(f"empty sub-sample: cut {cut} leaves one side of {panel.source!r} without targets")

    first = {key: value for key, value in panel.entries.items() if key[0] <= cut}
    second = {key: value for key, value in panel.entries.items() if key[0] > cut}
    return ErrorPanel(panel.source, first), ErrorPanel(panel.source, second)


def restrict_panel(panel: ErrorPanel, start: QuarterlyPeriod | None, end: QuarterlyPeriod | None) -> ErrorPanel:
    """Keep targets inside [start, end]; a missing bound is open."""
    entries = {
        key: value
        for key, value in panel.entries.items()
        if (start is None or key[0] >= start) and (end is None or key[0] <= end)
    }
    return ErrorPanel(panel.source, entries)


def midpoint_cut(start: QuarterlyPeriod, end: QuarterlyPeriod) -> QuarterlyPeriod:
    """Last period of the first of two equally sized halves of [start, end] (2014Q1-2023Q4 gives 2018Q4)."""
    length = end - start + 1
    if length < 2:
        raise EmptySubsampleError(f"empty sub-sample: span {start}-{end} cannot be halved")
    return start + (length // 2 - 1)


def reconstruct_realizations(errors: ErrorPanel, panel: ForecastPanel) -> dict[QuarterlyPeriod, float]:
    """Add forecasts back onto errors, returning the implied realization per target period."""
    implied: dict[QuarterlyPeriod, float] = {}
    for (target, horizon), error in errors:
        forecast = panel.get(target - horizon, horizon)
        if forecast is not None:
            implied[target] = forecast + error
    return implied
