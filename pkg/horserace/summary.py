from collections.abc import Sequence

import numpy as np
from scipy import stats

from horserace.types import SummaryStats
from horserace.utils.errors import DegenerateSampleError, InsufficientDataError

MIN_SUMMARY_OBSERVATIONS = 5


def autocorrelation(e: np.ndarray, lag: int) -> float:
    """Sample autocorrelation with the full-sample variance in the denominator."""
    centered = e - e.mean()
    denominator = float(centered @ centered)
    if denominator == 0:
        raise DegenerateSampleError("degenerate sample: zero variance")
    return float(centered[lag:] @ centered[: len(e) - lag]) / denominator


def summarize(errors: Sequence[float] | np.ndarray) -> SummaryStats:
    """
    Descriptive statistics of a forecast-error sample.

    std uses the n - 1 denominator; skew is the unadjusted moment ratio m3 / m2^1.5; ac1 and ac4 are
    biased autocorrelations. Medians of even samples average the two central values.
    """
    e = np.asarray(errors, dtype=float)
    n = len(e)
    if n < MIN_SUMMARY_OBSERVATIONS:
        raise InsufficientDataError(
            f"insufficient observations: summary statistics need {MIN_SUMMARY_OBSERVATIONS}, got {n}"
        )
    if np.ptp(e) == 0:
        raise DegenerateSampleError("degenerate sample: zero variance, skew and autocorrelations are undefined")

    absolute = np.abs(e)
    return SummaryStats(
        n=n,
        mean=float(e.mean()),
        median=float(np.median(e)),
        mae=float(absolute.mean()),
        mdae=float(np.median(absolute)),
        std=float(e.std(ddof=1)),
        max=float(e.max()),
        min=float(e.min()),
        skew=float(stats.skew(e, bias=True)),
        ac1=autocorrelation(e, 1),
        ac4=autocorrelation(e, 4),
    )
