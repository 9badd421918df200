from collections.abc import Callable
from dataclasses import asdict, dataclass
from itertools import product
from pathlib import Path

from horserace.benchmarks import AUTOREGRESSIVE_LABEL, RANDOM_WALK_LABEL, ar_panel, random_walk_panel
from horserace.cli.config import EvalConfig
from horserace.cli.report import Row, write_csv, write_report
from horserace.config import logger
from horserace.inference import compare_forecasts, fluctuation_dm, mz_regression
from horserace.io import align_survey, read_forecast_panel, read_realizations, read_survey, write_forecast_panel
from horserace.panels import build_error_panel, midpoint_cut, restrict_panel
from horserace.summary import summarize
from horserace.types import DMOutcome, ErrorPanel, ForecastPanel, LossSpec, QuarterlyPeriod, RealizationSeries
from horserace.utils.errors import ComputationError, ConfigError, EmptySubsampleError, InsufficientDataError
from horserace.utils.parallel import ordered_map

STATUS_OK = "ok"

SUMMARY_COLUMNS = (
    "source", "sample", "horizon", "status", "n", "mean", "median", "mae", "mdae", "std", "max", "min", "skew", "ac1",
    "ac4",
)  # fmt: skip
DM_COLUMNS = (
    "statistic", "n", "bandwidth", "b_ratio", "mean_differential", "lrv", "cv10", "cv05", "reject10", "reject05",
    "cv_source", "normal_cv10", "normal_cv05",
)  # fmt: skip
COMPARE_COLUMNS = ("source_a", "source_b", "sample", "loss", "horizon", "status", *DM_COLUMNS)
MZ_COLUMNS = (
    "source", "sample", "horizon", "status", "n", "bandwidth", "intercept", "slope", "se_intercept", "se_slope",
    "joint_wald", "wald_pvalue",
)  # fmt: skip
FLUCT_COLUMNS = ("source_a", "source_b", "loss", "horizon", "end", "status", *DM_COLUMNS)
PLOT_COLUMNS = ("source_a", "source_b", "sample", "loss", "horizon", "end", "series", "value")

Window = tuple[QuarterlyPeriod, QuarterlyPeriod]


@dataclass(frozen=True, slots=True)
class Evaluation:
    """Inputs shared by the evaluation commands, loaded once per run."""

    real: RealizationSeries
    panels: dict[str, ForecastPanel]
    errors: dict[str, ErrorPanel]
    candidate: str
    window: Window
    cut: QuarterlyPeriod | None


def _require_realizations(config: EvalConfig) -> RealizationSeries:
    if config.realizations is None:
        raise ConfigError("realizations path is not set")
    return read_realizations(config.realizations)


def _origins(config: EvalConfig, real: RealizationSeries) -> list[QuarterlyPeriod]:
    start = config.origin_start or real.start
    end = config.origin_end or real.end
    if end < start:
        raise ConfigError(f"origin_end {end} precedes origin_start {start}")
    return start.range_to(end)


def _benchmark_panels(config: EvalConfig, real: RealizationSeries) -> dict[str, ForecastPanel]:
    origins = _origins(config, real)
    panels: dict[str, ForecastPanel] = {}
    for benchmark in config.benchmarks:
        if benchmark == "rw":
            panels[RANDOM_WALK_LABEL] = random_walk_panel(real, origins, config.horizons, config.availability_lag)
        else:
            panels[AUTOREGRESSIVE_LABEL] = ar_panel(
                real,
                origins,
                config.horizons,
                window_length=config.ar_window,
                p_max=config.p_max,
                availability_lag=config.availability_lag,
                workers=config.workers,
            )
    return panels


def _add_panel(panels: dict[str, ForecastPanel], panel: ForecastPanel):
    if panel.source in panels:
        raise ConfigError(f"source label {panel.source!r} is used twice")
    panels[panel.source] = panel


def _resolve_cut(config: EvalConfig, window: Window) -> QuarterlyPeriod | None:
    if config.cut is None:
        return None
    if config.cut == "auto":
        try:
            return midpoint_cut(*window)
        except EmptySubsampleError as exc:
            logger.warning(f"No sub-samples: {exc}")
            return None
    return config.cut


def load_evaluation(config: EvalConfig) -> Evaluation:
    """Read every source, generate enabled benchmarks and fix the evaluation sample."""
    real = _require_realizations(config)

    panels: dict[str, ForecastPanel] = {}
    for label, path in config.forecasts:
        _add_panel(panels, read_forecast_panel(path, label))
    if config.survey is not None:
        _add_panel(panels, align_survey(read_survey(config.survey), config.survey_label))
    for panel in _benchmark_panels(config, real).values():
        _add_panel(panels, panel)
    if not panels:
        raise ConfigError("no forecast sources: set forecasts, survey or benchmarks")

    candidate = config.candidate or next(iter(panels))
    if candidate not in panels:
        raise ConfigError(f"candidate {candidate!r} is not one of the sources {list(panels)}")

    errors = {label: build_error_panel(panel, real) for label, panel in panels.items()}
    span = errors[candidate].span()
    start = config.eval_start or (span[0] if span else None)
    end = config.eval_end or (span[1] if span else None)
    if start is None or end is None:
        raise InsufficientDataError(f"insufficient observations: candidate {candidate!r} has no realized targets")
    if end < start:
        raise ConfigError(f"eval_end {end} precedes eval_start {start}")

    errors = {label: restrict_panel(panel, start, end) for label, panel in errors.items()}
    window = (start, end)
    cut = _resolve_cut(config, window)
    logger.info(
        f"Evaluating {len(panels)} sources on {start}-{end}",
        extra={"candidate": candidate, "cut": str(cut) if cut else None},
    )
    return Evaluation(real, panels, errors, candidate, window, cut)


def _sample_windows(evaluation: Evaluation) -> dict[str, Window | str]:
    start, end = evaluation.window
    cut = evaluation.cut
    if cut is None:
        return {"full": (start, end)}
    if not start <= cut < end:
        return {"full": (start, end), "sub1": EmptySubsampleError.reason, "sub2": EmptySubsampleError.reason}
    return {"full": (start, end), "sub1": (start, cut), "sub2": (cut + 1, end)}


def _sample_panels(panel: ErrorPanel, windows: dict[str, Window | str]) -> dict[str, ErrorPanel | str]:
    """Restrict a panel to every sample window; a sample that cannot be formed keeps its reason code."""
    return {
        sample: window if isinstance(window, str) else restrict_panel(panel, *window)
        for sample, window in windows.items()
    }


def _pairs(evaluation: Evaluation, swap_order: bool) -> list[tuple[str, str]]:
    others = [label for label in evaluation.panels if label != evaluation.candidate]
    if not others:
        raise ConfigError("comparisons need at least two sources: add a forecast panel, survey or benchmark")
    return [(other, evaluation.candidate) if swap_order else (evaluation.candidate, other) for other in others]


def _dm_fields(outcome: DMOutcome) -> Row:
    return {key: value for key, value in asdict(outcome).items() if key in DM_COLUMNS}


def _failed(row: Row, exc: ComputationError) -> Row:
    logger.warning(f"Cell failed: {exc}", extra={key: str(value) for key, value in row.items()})
    return {**row, "status": exc.reason}


def _plot_rows(key: Row, outcome: DMOutcome) -> list[Row]:
    series = {
        "statistic": outcome.statistic,
        "cv10_upper": outcome.cv10,
        "cv10_lower": -outcome.cv10,
        "cv05_upper": outcome.cv05,
        "cv05_lower": -outcome.cv05,
    }
    return [{**key, "series": name, "value": value} for name, value in series.items()]


def cmd_bench(config: EvalConfig) -> list[Path]:
    """Write one forecast-panel CSV per enabled benchmark."""
    if not config.benchmarks:
        raise ConfigError("nothing to do: no benchmarks enabled")

    real = _require_realizations(config)
    paths = []
    for label, panel in _benchmark_panels(config, real).items():
        paths.append(write_forecast_panel(panel, config.out / f"bench_{label}.csv"))
        logger.info(f"Wrote {len(panel)} {label} forecasts", extra={"path": str(paths[-1])})
    return paths


def cmd_summary(config: EvalConfig) -> list[Path]:
    """Forecast-error summary statistics per source, sample and horizon."""
    evaluation = load_evaluation(config)
    windows = _sample_windows(evaluation)
    rows: list[Row] = []
    for source, errors in evaluation.errors.items():
        for sample, panel in _sample_panels(errors, windows).items():
            for horizon in config.horizons:
                key: Row = {"source": source, "sample": sample, "horizon": horizon}
                if isinstance(panel, str):
                    rows.append({**key, "status": panel})
                    continue

                values = [error for _, error in panel.series(horizon)]
                try:
                    stats = summarize(values)
                except ComputationError as exc:
                    rows.append({**_failed(key, exc), "n": len(values)})
                    continue
                rows.append({**key, "status": STATUS_OK, **asdict(stats)})
    return write_report(rows, SUMMARY_COLUMNS, config.out, "summary")


def cmd_compare(config: EvalConfig) -> list[Path]:
    """Diebold-Mariano tests of the candidate against every other source on the full grid."""
    evaluation = load_evaluation(config)
    windows = _sample_windows(evaluation)
    cells = list(product(_pairs(evaluation, config.swap_order), windows, config.losses, config.horizons))
    logger.info(f"Running {len(cells)} comparison cells", extra={"workers": config.workers})

    def run(cell: tuple[tuple[str, str], str, LossSpec, int]) -> Row:
        (source_a, source_b), sample, spec, horizon = cell
        key: Row = {"source_a": source_a, "source_b": source_b, "sample": sample}
        key.update(loss=spec.label, horizon=horizon)
        window = windows[sample]
        if isinstance(window, str):
            return {**key, "status": window}
        try:
            outcome = compare_forecasts(
                evaluation.errors[source_a],
                evaluation.errors[source_b],
                spec,
                horizon,
                window,
                config.cv_source,
                config.seed,
            )
        except ComputationError as exc:
            return _failed(key, exc)
        return {**key, "status": STATUS_OK, **_dm_fields(outcome), "_outcome": outcome}

    rows = ordered_map(run, cells, config.workers)
    plot: list[Row] = []
    for row in rows:
        outcome = row.pop("_outcome", None)
        if outcome is not None:
            plot.extend(_plot_rows({key: row[key] for key in PLOT_COLUMNS[:5]}, outcome))

    paths = write_report(rows, COMPARE_COLUMNS, config.out, "compare")
    paths.append(write_csv(plot, PLOT_COLUMNS, config.out / "compare_plot.csv"))
    return paths


def cmd_mz(config: EvalConfig) -> list[Path]:
    """Rationality regressions of realizations on forecasts per source, sample and horizon."""
    evaluation = load_evaluation(config)
    windows = _sample_windows(evaluation)
    rows: list[Row] = []
    for source, errors in evaluation.errors.items():
        forecasts = evaluation.panels[source]
        for sample, panel in _sample_panels(errors, windows).items():
            for horizon in config.horizons:
                key: Row = {"source": source, "sample": sample, "horizon": horizon}
                if isinstance(panel, str):
                    rows.append({**key, "status": panel})
                    continue

                targets = panel.targets(horizon)
                f = [forecasts.get(target - horizon, horizon) for target in targets]
                y = [evaluation.real.get(target) for target in targets]
                try:
                    outcome = mz_regression(f, y, config.mz_bandwidth)
                except ComputationError as exc:
                    rows.append({**_failed(key, exc), "n": len(targets)})
                    continue
                rows.append({**key, "status": STATUS_OK, **asdict(outcome)})
    return write_report(rows, MZ_COLUMNS, config.out, "mz")


def cmd_fluct(config: EvalConfig) -> list[Path]:
    """Rolling-window DM statistics for every pair, loss and horizon on the full evaluation sample."""
    evaluation = load_evaluation(config)
    cells = list(product(_pairs(evaluation, config.swap_order), config.losses, config.horizons))

    def run(cell: tuple[tuple[str, str], LossSpec, int]) -> list[Row]:
        (source_a, source_b), spec, horizon = cell
        key: Row = {"source_a": source_a, "source_b": source_b, "loss": spec.label, "horizon": horizon}
        try:
            points = fluctuation_dm(
                evaluation.errors[source_a],
                evaluation.errors[source_b],
                spec,
                horizon,
                config.fluct_window,
                config.cv_source,
                config.seed,
            )
        except ComputationError as exc:
            return [_failed(key, exc)]

        rows = []
        for point in points:
            row: Row = {**key, "end": str(point.end)}
            if point.outcome is None:
                rows.append({**row, "status": point.reason})
            else:
                rows.append({**row, "status": STATUS_OK, **_dm_fields(point.outcome), "_outcome": point.outcome})
        return rows

    rows = [row for cell_rows in ordered_map(run, cells, config.workers) for row in cell_rows]
    if not any("end" in row for row in rows):
        raise InsufficientDataError(
            f"insufficient observations: no rolling window of {config.fluct_window} fits any common target span"
        )

    plot: list[Row] = []
    for row in rows:
        outcome = row.pop("_outcome", None)
        if outcome is not None:
            key = {name: row.get(name) for name in PLOT_COLUMNS[:6]} | {"sample": "full"}
            plot.extend(_plot_rows(key, outcome))

    paths = write_report(rows, FLUCT_COLUMNS, config.out, "fluct")
    paths.append(write_csv(plot, PLOT_COLUMNS, config.out / "fluct_plot.csv"))
    return paths


def cmd_align_survey(config: EvalConfig) -> list[Path]:
    """Convert the fixed-event survey file into a fixed-horizon forecast panel CSV."""
    if config.survey is None:
        raise ConfigError("survey path is not set")
    panel = align_survey(read_survey(config.survey), config.survey_label)
    return [write_forecast_panel(panel, config.out / f"{config.survey_label}_aligned.csv")]


COMMANDS: dict[str, Callable[[EvalConfig], list[Path]]] = {
    "bench": cmd_bench,
    "summary": cmd_summary,
    "compare": cmd_compare,
    "mz": cmd_mz,
    "fluct": cmd_fluct,
    "align-survey": cmd_align_survey,
}
