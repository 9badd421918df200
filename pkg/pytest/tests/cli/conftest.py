import json
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

from horserace.cli import main
from horserace.types import QuarterlyPeriod

FIRST = QuarterlyPeriod(2000, 1)
LAST = QuarterlyPeriod(2023, 4)
EVAL_START = QuarterlyPeriod(2014, 1)
HORIZONS = (0, 1, 2, 4, 8, 12)


@dataclass(frozen=True)
class Dataset:
    root: Path
    realizations: Path
    forecasts: dict[str, Path]
    config: Path

    def forecast_flags(self, *labels: str) -> list[str]:
        flags = []
        for label in labels:
            flags += ["--forecast", f"{label}={self.forecasts[label]}"]
        return flags


def _write(path: Path, header: str, rows: list[str]) -> Path:
    path.write_text("\n".join([header, *rows]) + "\n", encoding="utf-8")
    return path


def _panel_rows(values: Callable[[QuarterlyPeriod, int], str]) -> list[str]:
    rows = []
    for target in EVAL_START.range_to(LAST):
        for horizon in HORIZONS:
            origin = target - horizon
            rows.append(f"{origin},{horizon},{values(target, horizon)}")
    return rows


@pytest.fixture(scope="session")
def dataset(tmp_path_factory: pytest.TempPathFactory) -> Dataset:
    """
    Quarterly inflation 2000Q1-2023Q4 from an AR(1), plus forecast panels with targets 2014Q1-2023Q4:
    `boe` (truth plus noise), `naive` (realization two quarters before the origin), `oracle` (exact)
    and `twin` (a copy of `boe`).
    """
    root = tmp_path_factory.mktemp("horserace")
    rng = np.random.default_rng(7)

    level = 2.0
    truth: dict[QuarterlyPeriod, str] = {}
    for period in FIRST.range_to(LAST):
        level = 0.6 + 0.7 * level + rng.normal(scale=0.5)
        truth[period] = f"{level:.3f}"

    noise = {
        (target, horizon): rng.normal(scale=0.2 + 0.05 * horizon)
        for target in EVAL_START.range_to(LAST)
        for horizon in HORIZONS
    }

    def boe(target: QuarterlyPeriod, horizon: int) -> str:
        return f"{float(truth[target]) + noise[(target, horizon)]:.3f}"

    def naive(target: QuarterlyPeriod, horizon: int) -> str:
        return truth[target - horizon - 2]

    def oracle(target: QuarterlyPeriod, horizon: int) -> str:
        return truth[target]

    realizations = _write(root / "cpi.csv", "period,value", [f"{p},{v}" for p, v in truth.items()])
    forecasts = {
        "boe": _write(root / "boe.csv", "origin,horizon,value", _panel_rows(boe)),
        "naive": _write(root / "naive.csv", "origin,horizon,value", _panel_rows(naive)),
        "oracle": _write(root / "oracle.csv", "origin,horizon,value", _panel_rows(oracle)),
        "twin": _write(root / "twin.csv", "origin,horizon,value", _panel_rows(boe)),
    }
    config = root / "horserace.conf"
    config.write_text(
        "\n".join(
            [
                "# evaluation inputs",
                f"realizations = {realizations}",
                f"forecasts = boe={forecasts['boe']}, naive={forecasts['naive']}, oracle={forecasts['oracle']}",
                "candidate = boe",
                "",
                "horizons = 0, 1, 2, 4, 8, 12  # quarters ahead",
            ]
        )
        + "\n",
        encoding="utf-8",
    )
    return Dataset(root, realizations, forecasts, config)


@pytest.fixture()
def run() -> Callable[..., int]:
    def run_command(*args: str | Path) -> int:
        return main([str(arg) for arg in args])

    return run_command


@pytest.fixture()
def load_rows() -> Callable[[Path], list[dict]]:
    def load(path: Path) -> list[dict]:
        return json.loads(path.read_text(encoding="utf-8"))

    return load
