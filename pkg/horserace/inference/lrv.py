import math
from collections.abc import Sequence

import numpy as np


def bandwidth_rule(n: int) -> int:
    """floor(sqrt(n)): 6 for 40 observations, 4 for 20."""
    if n < 1:
        raise ValueError(f"sample size must be positive, got {n}")
    return math.isqrt(n)


def bartlett_weights(bandwidth: int) -> np.ndarray:
    """Weights 1 - j/M for j = 0..M-1 (the weight reaches zero at j = M)."""
    return 1.0 - np.arange(bandwidth) / bandwidth


def _check_bandwidth(n: int, bandwidth: int):
    if n < 2:
        raise ValueError(f"long-run variance needs at least 2 observations, got {n}")
    if not 1 <= bandwidth <= n:
        raise ValueError(f"bandwidth must lie in 1..{n}, got {bandwidth}")


def bartlett_lrv(d: Sequence[float] | np.ndarray, bandwidth: int) -> float:
    """
    Bartlett-kernel long-run variance of a demeaned series:
    gamma_0 + 2 * sum_{j=1}^{M-1} (1 - j/M) * gamma_j, with gamma_j = (1/n) sum_t u_t u_{t-j}.
    """
    u = np.asarray(d, dtype=float)
    n = len(u)
    _check_bandwidth(n, bandwidth)

    u = u - u.mean()
    weights = bartlett_weights(bandwidth)
    gammas = np.array([u[j:] @ u[: n - j] for j in range(bandwidth)]) / n
    lrv = gammas[0] + 2.0 * float(weights[1:] @ gammas[1:])
    return max(float(lrv), 0.0)


def bartlett_lrv_rows(d: np.ndarray, bandwidth: int) -> np.ndarray:
    """Row-wise `bartlett_lrv` for a (reps x n) array of simulated series."""
    u = np.asarray(d, dtype=float)
    n = u.shape[1]
    _check_bandwidth(n, bandwidth)

    u = u - u.mean(axis=1, keepdims=True)
    weights = bartlett_weights(bandwidth)
    lrv = np.einsum("ij,ij->i", u, u) / n
    for j in range(1, bandwidth):
        lrv += 2.0 * weights[j] * np.einsum("ij,ij->i", u[:, j:], u[:, : n - j]) / n
    return np.maximum(lrv, 0.0)
