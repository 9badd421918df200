import math
import re
from collections.abc import Iterator
from os import PathLike

import pandas as pd

from horserace.config import logger
from horserace.types import ForecastPanel, MonthlyPeriod, PanelKey, QuarterlyPeriod, RealizationSeries, SurveyRecord
from horserace.utils.errors import IngestionError

REALIZATION_COLUMNS = ("period", "value")
FORECAST_COLUMNS = ("origin", "horizon", "value")
SURVEY_COLUMNS = ("pub_year", "pub_month", "target_year", "value")

PathType = str | PathLike[str]

# pandas tokenizer errors name the offending 1-based file line
_PARSER_LINE = re.compile(r"line (\d+)")


def _cell(value: object) -> str:
    return value.strip() if isinstance(value, str) else ""


def _read_rows(path: PathType, columns: tuple[str, ...]) -> Iterator[tuple[int, dict[str, str]]]:
    """
    Yield (file line number, row) for every nonblank data row, validating the header.

    The header row is read as data, so the field count is fixed by the header: a row with more
    fields is rejected with its line number and a row with fewer fails as a missing field.
    """
    try:
        frame = pd.read_csv(
            path,
            header=None,
            index_col=False,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8-sig",
        )
    except OSError as exc:
        raise IngestionError(f"cannot read input: {exc.strerror or exc}", str(path)) from exc
    except pd.errors.EmptyDataError as exc:
        raise IngestionError("format error: missing header row", str(path), 1) from exc
    except pd.errors.ParserError as exc:
        found = _PARSER_LINE.search(str(exc))
        line = int(found.group(1)) if found else None
        raise IngestionError(f"format error: expected {len(columns)} fields", str(path), line) from exc

    header = tuple(_cell(cell).lower() for cell in frame.iloc[0])
    if header != columns:
        raise IngestionError(f"format error: expected header {','.join(columns)}, got {','.join(header)}", str(path), 1)

    for position, record in enumerate(frame.iloc[1:].itertuples(index=False, name=None)):
        line = position + 2
        cells = [_cell(cell) for cell in record]
        if not any(cells):
            continue
        if not all(cells):
            raise IngestionError("format error: missing field", str(path), line)
        yield line, dict(zip(columns, cells))


def _parse_float(token: str, path: PathType, line: int) -> float:
    try:
        value = float(token)
    except ValueError as exc:
        raise IngestionError(f"format error: invalid number {token!r}", str(path), line) from exc
    if not math.isfinite(value):
        raise IngestionError(f"format error: non-finite number {token!r}", str(path), line)
    return value


def _parse_int(token: str, path: PathType, line: int) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise IngestionError(f"format error: invalid integer {token!r}", str(path), line) from exc


def _parse_period(token: str, path: PathType, line: int) -> QuarterlyPeriod:
    try:
        return QuarterlyPeriod.parse(token)
    except ValueError as exc:
        raise IngestionError(f"format error: {exc}", str(path), line) from exc


def read_realizations(path: PathType) -> RealizationSeries:
    """Read a `period,value` CSV into a contiguous series. Rows may come in any order."""
    rows: dict[QuarterlyPeriod, tuple[int, float]] = {}
    for line, row in _read_rows(path, REALIZATION_COLUMNS):
        period = _parse_period(row["period"], path, line)
        if period in rows:
            raise IngestionError(f"duplicate row for {period} (first seen on line {rows[period][0]})", str(path), line)
        rows[period] = (line, _parse_float(row["value"], path, line))

    if not rows:
        raise IngestionError("format error: no observations", str(path))

    periods = sorted(rows)
    for previous, current in zip(periods, periods[1:]):
        if current - previous != 1:
            raise IngestionError(
                f"non-contiguous series: gap between {previous} and {current}", str(path), rows[current][0]
            )

    return RealizationSeries(periods[0], tuple(rows[p][1] for p in periods))


def read_forecast_panel(path: PathType, source_label: str) -> ForecastPanel:
    """Read a long-format `origin,horizon,value` CSV."""
    entries: dict[PanelKey, float] = {}
    for line, row in _read_rows(path, FORECAST_COLUMNS):
        origin = _parse_period(row["origin"], path, line)
        horizon = _parse_int(row["horizon"], path, line)
        if horizon < 0:
            raise IngestionError(f"negative horizon {horizon}", str(path), line)
        key = (origin, horizon)
        if key in entries:
            raise IngestionError(f"duplicate row for origin {origin}, horizon {horizon}", str(path), line)
        entries[key] = _parse_float(row["value"], path, line)

    logger.debug(f"Read {len(entries)} forecasts", extra={"source": source_label, "path": str(path)})
    return ForecastPanel(source_label, entries)


def read_survey(path: PathType) -> list[SurveyRecord]:
    """Read a `pub_year,pub_month,target_year,value` CSV of fixed-event survey forecasts."""
    records: list[SurveyRecord] = []
    for line, row in _read_rows(path, SURVEY_COLUMNS):
        try:
            year = _parse_int(row["pub_year"], path, line)
            publication = MonthlyPeriod(year, _parse_int(row["pub_month"], path, line))
            record = SurveyRecord(
                publication=publication,
                target_year=_parse_int(row["target_year"], path, line),
                value=_parse_float(row["value"], path, line),
            )
        except ValueError as exc:
            if isinstance(exc, IngestionError):
                raise
            raise IngestionError(f"format error: {exc}", str(path), line) from exc
        records.append(record)
    return records
