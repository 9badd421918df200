import math

import numpy as np
from scipy import stats

from horserace.cache import memoize
from horserace.config import logger
from horserace.utils.parallel import chunk_sizes, ordered_map, spawn_generators

DEFAULT_SEED = 20240101
DEFAULT_SIMULATION_REPS = 50_000
DEFAULT_SIMULATION_STEPS = 1_000
_SIMULATION_CHUNK = 2_000

# Cubic fixed-b critical value functions for the Bartlett kernel, cv(b) = z + a1*b + a2*b^2 + a3*b^3,
# keyed by two-sided significance level (z is the matching standard normal quantile).
FIXED_B_BARTLETT_COEFFICIENTS: dict[float, tuple[float, float, float]] = {
    0.20: (1.3040, 0.5135, -0.3386),
    0.10: (2.1859, 0.3142, -0.3427),
    0.05: (2.9694, 0.4160, -0.5324),
    0.02: (4.1618, 0.5368, -0.9132),
}


def _check_level(level: float) -> tuple[float, float, float]:
    for known, coefficients in FIXED_B_BARTLETT_COEFFICIENTS.items():
        if math.isclose(level, known):
            return coefficients
    raise ValueError(f"significance level must be one of {sorted(FIXED_B_BARTLETT_COEFFICIENTS)}, got {level}")


def _check_b(b: float):
    if not 0 < b <= 1:
        raise ValueError(f"bandwidth ratio b must lie in (0, 1], got {b}")


def normal_cv(level: float) -> float:
    """Two-sided standard normal critical value (1.645 at 10%, 1.960 at 5%)."""
    if not 0 < level < 1:
        raise ValueError(f"significance level must lie in (0, 1), got {level}")
    return float(stats.norm.ppf(1 - level / 2))


def fixed_b_cv(b: float, level: float) -> float:
    """Two-sided fixed-b critical value for a Bartlett-kernel t-test with bandwidth ratio b = M / n."""
    _check_b(b)
    a1, a2, a3 = _check_level(level)
    return normal_cv(level) + a1 * b + a2 * b**2 + a3 * b**3


def _fixed_b_chunk(rng: np.random.Generator, size: int, steps: int, lag: int) -> np.ndarray:
    increments = rng.standard_normal((size, steps))
    partial = np.cumsum(increments, axis=1)
    total = partial[:, -1].copy()
    bridge = partial - np.arange(1, steps + 1) / steps * total[:, None]

    overlap = np.einsum("ij,ij->i", bridge[:, lag:], bridge[:, : steps - lag])
    lrv = 2.0 / (lag * steps) * (np.einsum("ij,ij->i", bridge, bridge) - overlap)
    lrv = np.maximum(lrv, np.finfo(float).tiny)
    return np.abs(total / math.sqrt(steps)) / np.sqrt(lrv)


@memoize(ignore_fields=("workers",))
def simulated_fixed_b_statistics(b: float, reps: int, steps: int, seed: int, workers: int = 1) -> np.ndarray:
    """
    Draws of |t| from the Bartlett fixed-b limit W(1) / sqrt(Q(b)), approximated with `steps`-point
    random walks. Each chunk of replications has its own generator spawned from `seed`, so the draws
    depend on the seed only.
    """
    _check_b(b)
    lag = max(1, round(b * steps))
    sizes = chunk_sizes(reps, _SIMULATION_CHUNK)
    generators = spawn_generators(seed, len(sizes))

    logger.info(
        f"Simulating fixed-b distribution for b={b:g}",
        extra={"b": b, "reps": reps, "steps": steps, "seed": seed},
    )
    draws = np.concatenate(
        ordered_map(lambda job: _fixed_b_chunk(job[0], job[1], steps, lag), list(zip(generators, sizes)), workers)
    )
    draws.setflags(write=False)
    return draws


def simulate_fixed_b_cv(
    b: float,
    level: float,
    reps: int = DEFAULT_SIMULATION_REPS,
    steps: int = DEFAULT_SIMULATION_STEPS,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> float:
    """Simulated two-sided fixed-b critical value; repeated calls reuse the memoized draws."""
    if not 0 < level < 1:
        raise ValueError(f"significance level must lie in (0, 1), got {level}")
    draws = simulated_fixed_b_statistics(b, reps, steps, seed, workers)
    return float(np.quantile(draws, 1 - level))
