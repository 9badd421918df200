import numpy as np
import pytest

from horserace.inference import bandwidth_rule, bartlett_lrv
from horserace.inference.lrv import bartlett_lrv_rows, bartlett_weights


def _brute_force_lrv(d: np.ndarray, bandwidth: int) -> float:
    n = len(d)
    mean = sum(d) / n
    total = 0.0
    for s in range(n):
        for t in range(n):
            lag = abs(s - t)
            if lag < bandwidth:
                total += (1 - lag / bandwidth) * (d[s] - mean) * (d[t] - mean)
    return total / n


@pytest.mark.parametrize("n, expected", [(40, 6), (20, 4), (1, 1), (99, 9), (100, 10)])
def test_bandwidth_rule(n: int, expected: int):
    assert bandwidth_rule(n) == expected


def test_bandwidth_rule_rejects_empty_samples():
    with pytest.raises(ValueError):
        bandwidth_rule(0)


def test_weights_reach_zero_at_the_bandwidth():
    np.testing.assert_allclose(bartlett_weights(4), [1.0, 0.75, 0.5, 0.25])


def test_alternating_series():
    assert bartlett_lrv([1, -1, 1, -1], 2) == pytest.approx(0.25, abs=1e-15)


def test_unit_bandwidth_is_the_biased_variance():
    d = np.random.default_rng(2).normal(size=25)

    assert bartlett_lrv(d, 1) == pytest.approx(np.var(d), rel=1e-12)


def test_matches_the_weighted_double_sum():
    rng = np.random.default_rng(12)
    for _ in range(100):
        d = rng.normal(size=int(rng.integers(8, 65))) + rng.normal()
        bandwidth = bandwidth_rule(len(d))

        lrv = bartlett_lrv(d, bandwidth)

        assert lrv >= 0
        assert lrv == pytest.approx(_brute_force_lrv(d, bandwidth), rel=1e-12, abs=1e-12)


def test_bandwidth_outside_the_sample():
    with pytest.raises(ValueError, match="bandwidth"):
        bartlett_lrv([1.0, 2.0, 3.0], 4)


def test_row_version_agrees_with_the_scalar_one():
    draws = np.random.default_rng(6).normal(size=(15, 20))

    rows = bartlett_lrv_rows(draws, 4)

    np.testing.assert_allclose(rows, [bartlett_lrv(row, 4) for row in draws], rtol=1e-12)
