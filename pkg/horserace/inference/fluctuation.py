from horserace.config import logger
from horserace.inference.critical_values import DEFAULT_SEED
from horserace.inference.dm import DEFAULT_CV_SOURCE, MIN_DM_OBSERVATIONS, paired_errors, test_dm
from horserace.losses import loss_series
from horserace.types import CvSource, ErrorPanel, FluctuationPoint, LossSpec, QuarterlyPeriod
from horserace.utils.errors import ComputationError, InsufficientDataError


def _consecutive_runs(targets: list[QuarterlyPeriod]) -> list[tuple[int, int]]:
    """[start, stop) positions of the maximal stretches of consecutive quarters."""
    runs: list[tuple[int, int]] = []
    first = 0
    for k in range(1, len(targets) + 1):
        if k == len(targets) or targets[k] != targets[k - 1] + 1:
            runs.append((first, k))
            first = k
    return runs


def fluctuation_dm(
    err_a: ErrorPanel,
    err_b: ErrorPanel,
    spec: LossSpec,
    horizon: int,
    window_length: int,
    cv_source: CvSource = DEFAULT_CV_SOURCE,
    seed: int = DEFAULT_SEED,
) -> list[FluctuationPoint]:
    """
    DM statistics on every rolling window of `window_length` consecutive common targets, ordered by
    window end. Degenerate windows are reported through `FluctuationPoint.reason` instead of raising.

    A window never spans a missing quarter: rolling restarts after every gap in the common targets.
    """
    if window_length < MIN_DM_OBSERVATIONS:
        raise InsufficientDataError(
            f"insufficient observations: rolling windows need at least {MIN_DM_OBSERVATIONS}, got {window_length}"
        )

    targets, e_a, e_b = paired_errors(err_a, err_b, horizon)
    runs = _consecutive_runs(targets)
    longest = max((stop - start for start, stop in runs), default=0)
    if longest < window_length:
        raise InsufficientDataError(
            f"insufficient observations: window of {window_length} exceeds the {longest} consecutive common "
            f"targets at horizon {horizon}"
        )
    if len(runs) > 1:
        logger.info(
            f"Common targets have {len(runs) - 1} gaps, rolling windows restart after each",
            extra={"horizon": horizon, "runs": [stop - start for start, stop in runs]},
        )

    loss_a = loss_series(spec, e_a)
    loss_b = loss_series(spec, e_b)

    points: list[FluctuationPoint] = []
    for start, stop in runs:
        for last in range(start + window_length, stop + 1):
            end = targets[last - 1]
            window = slice(last - window_length, last)
            try:
                outcome = test_dm(loss_a[window], loss_b[window], cv_source, seed)
            except ComputationError as exc:
                logger.debug(f"Degenerate window ending {end}: {exc}", extra={"horizon": horizon, "loss": spec.label})
                points.append(FluctuationPoint(end, None, exc.reason))
                continue
            points.append(FluctuationPoint(end, outcome))
    return points
