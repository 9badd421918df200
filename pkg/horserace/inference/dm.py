import math
from collections.abc import Sequence
from typing import get_args

import numpy as np

from horserace.config import logger
from horserace.inference.critical_values import DEFAULT_SEED, fixed_b_cv, normal_cv, simulate_fixed_b_cv
from horserace.inference.lrv import bandwidth_rule, bartlett_lrv
from horserace.losses import loss_series
from horserace.types import CvSource, DMOutcome, ErrorPanel, LossSpec, QuarterlyPeriod
from horserace.utils.errors import ComputationError, DegenerateDifferentialError, InsufficientDataError

DEFAULT_CV_SOURCE: CvSource = "fixed_b"
MIN_DM_OBSERVATIONS = 8

# a long-run variance at rounding level relative to the mean squared differential counts as zero
_LRV_RTOL = (64 * np.finfo(float).eps) ** 2

Window = tuple[QuarterlyPeriod | None, QuarterlyPeriod | None]


def critical_values(b: float, cv_source: CvSource, seed: int = DEFAULT_SEED) -> tuple[float, float]:
    """Two-sided (10%, 5%) critical values for bandwidth ratio b."""
    if cv_source == "fixed_b":
        return fixed_b_cv(b, 0.10), fixed_b_cv(b, 0.05)
    if cv_source == "fixed_b_simulated":
        return simulate_fixed_b_cv(b, 0.10, seed=seed), simulate_fixed_b_cv(b, 0.05, seed=seed)
    if cv_source == "standard_normal":
        return normal_cv(0.10), normal_cv(0.05)
    raise ValueError(f"cv_source must be one of {get_args(CvSource)}, got {cv_source!r}")


def test_dm(
    loss_a: Sequence[float] | np.ndarray,
    loss_b: Sequence[float] | np.ndarray,
    cv_source: CvSource = DEFAULT_CV_SOURCE,
    seed: int = DEFAULT_SEED,
) -> DMOutcome:
    """
    Diebold-Mariano test of equal expected loss on losses paired by target period.

    d_t = loss_a_t - loss_b_t and the statistic is mean(d) / sqrt(LRV / n) with a Bartlett LRV at
    bandwidth floor(sqrt(n)). A negative statistic means forecast A has the lower loss.

    Only a differential that is constant up to rounding is degenerate. A nearly constant differential with
    a nonzero mean has a tiny but genuine long-run variance and gets a very large finite statistic.
    """
    a = np.asarray(loss_a, dtype=float)
    b = np.asarray(loss_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ComputationError(f"length mismatch: {a.shape} vs {b.shape} losses")

    n = len(a)
    if n < MIN_DM_OBSERVATIONS:
        raise InsufficientDataError(f"insufficient observations: DM test needs {MIN_DM_OBSERVATIONS}, got {n}")

    d = a - b
    bandwidth = bandwidth_rule(n)
    lrv = bartlett_lrv(d, bandwidth)
    if lrv <= _LRV_RTOL * max(float(d @ d) / n, np.finfo(float).tiny):
        raise DegenerateDifferentialError("degenerate differential: zero long-run variance")

    mean_differential = float(d.mean())
    statistic = mean_differential / math.sqrt(lrv / n)
    b_ratio = bandwidth / n
    cv10, cv05 = critical_values(b_ratio, cv_source, seed)

    return DMOutcome(
        statistic=statistic,
        n=n,
        bandwidth=bandwidth,
        b_ratio=b_ratio,
        mean_differential=mean_differential,
        lrv=lrv,
        cv10=cv10,
        cv05=cv05,
        reject10=abs(statistic) > cv10,
        reject05=abs(statistic) > cv05,
        cv_source=cv_source,
        normal_cv10=normal_cv(0.10),
        normal_cv05=normal_cv(0.05),
    )


test_dm.__test__ = False  # type: ignore[attr-defined]


def paired_errors(
    err_a: ErrorPanel,
    err_b: ErrorPanel,
    horizon: int,
    window: Window | None = None,
) -> tuple[list[QuarterlyPeriod], np.ndarray, np.ndarray]:
    """Errors of both panels on their common target periods at one horizon, in target order."""
    start, end = window if window is not None else (None, None)
    common = sorted(
        target
        for target, h in err_a.entries
        if h == horizon
        and (target, horizon) in err_b.entries
        and (start is None or target >= start)
        and (end is None or target <= end)
    )
    e_a = np.array([err_a.entries[(t, horizon)] for t in common], dtype=float)
    e_b = np.array([err_b.entries[(t, horizon)] for t in common], dtype=float)
    return common, e_a, e_b


def compare_forecasts(
    err_a: ErrorPanel,
    err_b: ErrorPanel,
    spec: LossSpec,
    horizon: int,
    window: Window | None = None,
    cv_source: CvSource = DEFAULT_CV_SOURCE,
    seed: int = DEFAULT_SEED,
) -> DMOutcome:
    """DM test of panel A against panel B under `spec` on the common targets at `horizon` inside `window`."""
    common, e_a, e_b = paired_errors(err_a, err_b, horizon, window)
    if len(common) < MIN_DM_OBSERVATIONS:
        raise InsufficientDataError(
            f"insufficient observations: {len(common)} common targets for {err_a.source!r} vs {err_b.source!r} "
            f"at horizon {horizon}, need {MIN_DM_OBSERVATIONS}"
        )

    logger.debug(
        f"DM {err_a.source} vs {err_b.source}",
        extra={"horizon": horizon, "loss": spec.label, "n": len(common)},
    )
    return test_dm(loss_series(spec, e_a), loss_series(spec, e_b), cv_source, seed)
