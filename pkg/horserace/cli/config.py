from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from os import PathLike
from pathlib import Path
from typing import Literal, get_args

from horserace.benchmarks import DEFAULT_AVAILABILITY_LAG, DEFAULT_MAX_LAG, DEFAULT_WINDOW_LENGTH
from horserace.inference import DEFAULT_CV_SOURCE, DEFAULT_SEED, MIN_DM_OBSERVATIONS
from horserace.io import DEFAULT_SURVEY_LABEL
from horserace.losses import DEFAULT_LOSSES
from horserace.types import CvSource, LossSpec, QuarterlyPeriod
from horserace.utils.errors import ConfigError

Benchmark = Literal["rw", "ar"]
CutSetting = QuarterlyPeriod | Literal["auto"] | None

DEFAULT_HORIZONS = (0, 1, 2, 4, 8, 12)
DEFAULT_OUTPUT_DIR = "out"
DEFAULT_FLUCTUATION_WINDOW = 20

CONFIG_KEYS = (
    "realizations",
    "forecasts",
    "survey",
    "survey_label",
    "candidate",
    "horizons",
    "losses",
    "cut",
    "eval_start",
    "eval_end",
    "origin_start",
    "origin_end",
    "benchmarks",
    "ar_window",
    "p_max",
    "availability_lag",
    "cv_source",
    "out",
    "seed",
    "workers",
    "fluct_window",
    "mz_bandwidth",
    "swap_order",
)


@dataclass(frozen=True, slots=True)
class EvalConfig:
    """Everything a CLI command needs. Built from a key = value file overlaid with command-line flags."""

    realizations: Path | None = None
    forecasts: tuple[tuple[str, Path], ...] = ()
    survey: Path | None = None
    survey_label: str = DEFAULT_SURVEY_LABEL
    candidate: str | None = None
    horizons: tuple[int, ...] = DEFAULT_HORIZONS
    losses: tuple[LossSpec, ...] = DEFAULT_LOSSES
    cut: CutSetting = "auto"
    eval_start: QuarterlyPeriod | None = None
    eval_end: QuarterlyPeriod | None = None
    origin_start: QuarterlyPeriod | None = None
    origin_end: QuarterlyPeriod | None = None
    benchmarks: tuple[Benchmark, ...] = ()
    ar_window: int = DEFAULT_WINDOW_LENGTH
    p_max: int = DEFAULT_MAX_LAG
    availability_lag: int = DEFAULT_AVAILABILITY_LAG
    cv_source: CvSource = DEFAULT_CV_SOURCE
    out: Path = Path(DEFAULT_OUTPUT_DIR)
    seed: int = DEFAULT_SEED
    workers: int = 1
    fluct_window: int = DEFAULT_FLUCTUATION_WINDOW
    mz_bandwidth: int | None = None
    swap_order: bool = False

    def __post_init__(self):
        if not self.horizons:
            raise ConfigError("horizons must not be empty")
        if any(h < 0 for h in self.horizons):
            raise ConfigError(f"horizons must be nonnegative, got {list(self.horizons)}")
        if not self.losses:
            raise ConfigError("losses must not be empty")
        if self.cv_source not in get_args(CvSource):
            raise ConfigError(f"cv_source must be one of {get_args(CvSource)}")
        for benchmark in self.benchmarks:
            if benchmark not in get_args(Benchmark):
                raise ConfigError(f"benchmarks must be drawn from {get_args(Benchmark)}, got {benchmark!r}")
        if self.p_max < 1:
            raise ConfigError("p_max must be at least 1")
        if self.ar_window < 2 * self.p_max + 2:
            raise ConfigError(f"ar_window must be at least {2 * self.p_max + 2} for p_max {self.p_max}")
        if self.availability_lag < 0:
            raise ConfigError("availability_lag must be nonnegative")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.fluct_window < MIN_DM_OBSERVATIONS:
            raise ConfigError(f"fluct_window must be at least {MIN_DM_OBSERVATIONS}")
        if self.mz_bandwidth is not None and self.mz_bandwidth < 1:
            raise ConfigError("mz_bandwidth must be at least 1")
        labels = [label for label, _ in self.forecasts]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"forecast labels must be unique, got {labels}")


def read_config_file(path: str | PathLike[str]) -> dict[str, str]:
    """Parse a flat `key = value` file. `#` starts a comment; blank lines are skipped."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, separator, value = line.partition("=")
        if not separator:
            raise ConfigError(f"{path}:{number}: expected key = value")
        values[key.strip().lower()] = value.strip()
    return values


def _split(value: str) -> list[str]:
    """Split a comma list, keeping commas nested inside parentheses."""
    items, depth, current = [], 0, ""
    for char in value:
        if char == "," and depth == 0:
            items.append(current.strip())
            current = ""
            continue
        depth += char == "("
        depth -= char == ")"
        current += char
    items.append(current.strip())
    return [item for item in items if item]


def _period(key: str, value: str) -> QuarterlyPeriod | None:
    if not value or value.lower() == "none":
        return None
    try:
        return QuarterlyPeriod.parse(value)
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _integer(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from exc


def _boolean(key: str, value: str) -> bool:
    lowered = value.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _forecasts(value: str) -> tuple[tuple[str, Path], ...]:
    pairs = []
    for item in _split(value):
        label, separator, path = item.partition("=")
        if not separator or not label.strip() or not path.strip():
            raise ConfigError(f"forecasts: expected label=path, got {item!r}")
        pairs.append((label.strip(), Path(path.strip())))
    return tuple(pairs)


def _losses(value: str) -> tuple[LossSpec, ...]:
    try:
        return tuple(LossSpec.parse(item) for item in _split(value))
    except ValueError as exc:
        raise ConfigError(f"losses: {exc}") from exc


def _cut(value: str) -> CutSetting:
    if value.lower() == "auto":
        return "auto"
    return _period("cut", value)


def build_config(values: Mapping[str, str]) -> EvalConfig:
    """Turn raw string settings into a validated `EvalConfig`. Unknown keys are rejected."""
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

    kwargs: dict[str, object] = {}
    for key, value in values.items():
        if key in ("realizations", "survey"):
            kwargs[key] = Path(value) if value else None
        elif key == "out":
            kwargs[key] = Path(value or DEFAULT_OUTPUT_DIR)
        elif key in ("survey_label", "candidate"):
            kwargs[key] = value or None
        elif key == "forecasts":
            kwargs[key] = _forecasts(value)
        elif key == "horizons":
            kwargs[key] = tuple(sorted({_integer(key, item) for item in _split(value)}))
        elif key == "losses":
            kwargs[key] = _losses(value)
        elif key == "cut":
            kwargs[key] = _cut(value)
        elif key in ("eval_start", "eval_end", "origin_start", "origin_end"):
            kwargs[key] = _period(key, value)
        elif key == "benchmarks":
            kwargs[key] = tuple(item.lower() for item in _split(value))
        elif key == "cv_source":
            kwargs[key] = value
        elif key == "mz_bandwidth":
            kwargs[key] = _integer(key, value) if value else None
        elif key == "swap_order":
            kwargs[key] = _boolean(key, value)
        else:
            kwargs[key] = _integer(key, value)

    if kwargs.get("survey_label") is None:
        kwargs.pop("survey_label", None)
    return EvalConfig(**kwargs)  # type: ignore[arg-type]


def load_config(path: str | PathLike[str] | None, overrides: Mapping[str, str] | None = None) -> EvalConfig:
    """Config file settings overlaid with command-line overrides (overrides win)."""
    values = read_config_file(path) if path is not None else {}
    values.update(overrides or {})
    return build_config(values)
