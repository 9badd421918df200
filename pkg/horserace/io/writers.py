from pathlib import Path

import pandas as pd

from horserace.io.readers import FORECAST_COLUMNS, REALIZATION_COLUMNS, PathType
from horserace.types import ForecastPanel, RealizationSeries


def format_float(value: float) -> str:
    """Shortest representation that parses back to the same double."""
    return repr(float(value))


def _write_frame(frame: pd.DataFrame, path: PathType) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(target, index=False, lineterminator="\n", encoding="utf-8")
    return target


def write_forecast_panel(panel: ForecastPanel, path: PathType) -> Path:
    """Canonical long-format writer: rows sorted by origin then horizon."""
    rows = [(str(origin), str(horizon), format_float(value)) for (origin, horizon), value in panel]
    return _write_frame(pd.DataFrame(rows, columns=list(FORECAST_COLUMNS), dtype=str), path)


def write_realizations(series: RealizationSeries, path: PathType) -> Path:
    rows = [(str(period), format_float(value)) for period, value in zip(series.periods(), series.values)]
    return _write_frame(pd.DataFrame(rows, columns=list(REALIZATION_COLUMNS), dtype=str), path)
