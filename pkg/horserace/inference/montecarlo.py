import numpy as np

from horserace.inference.critical_values import DEFAULT_SEED, fixed_b_cv, normal_cv
from horserace.inference.lrv import bandwidth_rule, bartlett_lrv_rows
from horserace.types import DMSizeResult
from horserace.utils.parallel import chunk_sizes, ordered_map, spawn_generators

_CHUNK = 5_000


def _null_statistics(rng: np.random.Generator, size: int, n: int, bandwidth: int) -> np.ndarray:
    d = rng.standard_normal((size, n))
    lrv = bartlett_lrv_rows(d, bandwidth)
    return d.mean(axis=1) / np.sqrt(lrv / n)


def simulate_dm_size(
    n: int = 20,
    reps: int = 20_000,
    seed: int = DEFAULT_SEED,
    bandwidth: int | None = None,
    workers: int = 1,
) -> DMSizeResult:
    """
    Rejection frequencies of the DM test under the null (iid standard normal differentials) with fixed-b
    and with standard normal critical values. Results depend on the seed only, not on `workers`.
    """
    bandwidth = bandwidth_rule(n) if bandwidth is None else bandwidth
    sizes = chunk_sizes(reps, _CHUNK)
    generators = spawn_generators(seed, len(sizes))
    jobs = list(zip(generators, sizes))
    chunks = ordered_map(lambda job: _null_statistics(job[0], job[1], n, bandwidth), jobs, workers)
    statistics = np.abs(np.concatenate(chunks))

    b = bandwidth / n
    return DMSizeResult(
        n=n,
        bandwidth=bandwidth,
        reps=reps,
        reject10_fixed_b=float(np.mean(statistics > fixed_b_cv(b, 0.10))),
        reject05_fixed_b=float(np.mean(statistics > fixed_b_cv(b, 0.05))),
        reject10_normal=float(np.mean(statistics > normal_cv(0.10))),
        reject05_normal=float(np.mean(statistics > normal_cv(0.05))),
    )
