import math
from collections.abc import Sequence

import numpy as np
import statsmodels.api as sm

from horserace.config import logger
from horserace.inference.dm import MIN_DM_OBSERVATIONS
from horserace.inference.lrv import bandwidth_rule
from horserace.types import MZOutcome
from horserace.utils.errors import ComputationError, InsufficientDataError, SingularDesignError

# residual std at or below this fraction of the realizations' std counts as an exact fit
EXACT_FIT_RTOL = 1e-9
_RATIONAL = np.array([0.0, 1.0])


def _exact_fit(beta: np.ndarray, n: int, bandwidth: int) -> MZOutcome:
    holds = bool(np.all(np.abs(beta - _RATIONAL) <= 1e-10 * (1.0 + np.abs(beta))))
    logger.debug("Exact rationality fit", extra={"restriction_holds": holds, "n": n})
    return MZOutcome(
        intercept=float(beta[0]),
        slope=float(beta[1]),
        joint_wald=0.0 if holds else math.inf,
        wald_pvalue=1.0 if holds else 0.0,
        se_intercept=0.0,
        se_slope=0.0,
        n=n,
        bandwidth=bandwidth,
    )


def mz_regression(
    forecasts: Sequence[float] | np.ndarray,
    realizations: Sequence[float] | np.ndarray,
    bandwidth: int | None = None,
) -> MZOutcome:
    """
    Regress realizations on forecasts, y = intercept + slope * f + u, with Bartlett HAC standard errors,
    and Wald-test the rationality restriction (intercept, slope) = (0, 1).

    The HAC covariance is statsmodels' Newey-West estimator with `maxlags = bandwidth - 1` and no
    small-sample correction, i.e. the same weights 1 - j/M as the DM long-run variance.

    When the fit is exact the covariance vanishes: the Wald statistic is 0 if the restriction holds and
    infinite otherwise.
    """
    f = np.asarray(forecasts, dtype=float)
    y = np.asarray(realizations, dtype=float)
    if f.shape != y.shape or f.ndim != 1:
        raise ComputationError(f"length mismatch: {f.shape} forecasts vs {y.shape} realizations")

    n = len(f)
    if n < MIN_DM_OBSERVATIONS:
        raise InsufficientDataError(
            f"insufficient observations: rationality regression needs {MIN_DM_OBSERVATIONS}, got {n}"
        )
    bandwidth = bandwidth_rule(n) if bandwidth is None else bandwidth
    if bandwidth < 1:
        raise ValueError(f"bandwidth must be positive, got {bandwidth}")
    if bandwidth > n:
        raise InsufficientDataError(f"insufficient observations: bandwidth {bandwidth} exceeds the {n} observations")
    if np.ptp(f) == 0:
        raise SingularDesignError("singular design: forecasts are constant")

    fit = sm.OLS(y, sm.add_constant(f, has_constant="add")).fit(
        cov_type="HAC", cov_kwds={"maxlags": bandwidth - 1, "use_correction": False}
    )
    beta = np.asarray(fit.params)
    if float(np.std(fit.resid)) <= EXACT_FIT_RTOL * max(float(np.std(y)), np.finfo(float).tiny):
        return _exact_fit(beta, n, bandwidth)

    wald = fit.wald_test((np.eye(2), _RATIONAL), use_f=False, scalar=True)
    se = np.asarray(fit.bse)

    return MZOutcome(
        intercept=float(beta[0]),
        slope=float(beta[1]),
        joint_wald=float(np.squeeze(wald.statistic)),
        wald_pvalue=float(np.squeeze(wald.pvalue)),
        se_intercept=float(se[0]),
        se_slope=float(se[1]),
        n=n,
        bandwidth=bandwidth,
    )
