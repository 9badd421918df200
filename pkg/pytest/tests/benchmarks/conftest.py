import numpy as np
import pytest

from horserace.types import QuarterlyPeriod, RealizationSeries


def simulate_ar(coefficients: tuple[float, ...], intercept: float, n: int, seed: int, scale: float = 1.0) -> np.ndarray:
    """AR series with Gaussian shocks after a 100-observation burn-in."""
    rng = np.random.default_rng(seed)
    p = len(coefficients)
    y = np.zeros(n + 100 + p)
    shocks = rng.normal(scale=scale, size=len(y))
    for t in range(p, len(y)):
        y[t] = intercept + sum(c * y[t - k] for k, c in enumerate(coefficients, start=1)) + shocks[t]
    return y[-n:]


@pytest.fixture()
def ar1_series() -> RealizationSeries:
    return RealizationSeries(QuarterlyPeriod(1970, 1), tuple(simulate_ar((0.8,), 0.4, 200, seed=11)))


@pytest.fixture()
def simulate():
    return simulate_ar
