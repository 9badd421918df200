import math
from collections.abc import Sequence

import numpy as np

from horserace.types import LossSpec
from horserace.utils.errors import LossOverflowError

# |alpha * e| above this would overflow exp() in double precision
LINEX_OVERFLOW_LIMIT = 700.0

DEFAULT_LOSSES: tuple[LossSpec, ...] = (
    LossSpec("quadratic"),
    LossSpec("absolute"),
    LossSpec("linex", 0.5),
    LossSpec("linex", -0.5),
)


def _linex(scaled: np.ndarray) -> np.ndarray:
    # expm1(x) - x keeps precision near zero where exp(x) - x - 1 cancels
    return np.maximum(np.expm1(scaled) - scaled, 0.0)


def loss_series(spec: LossSpec, errors: Sequence[float] | np.ndarray) -> np.ndarray:
    """Elementwise loss of forecast errors."""
    e = np.asarray(errors, dtype=float)
    if not np.all(np.isfinite(e)):
        raise ValueError("forecast errors must be finite")

    if spec.kind == "quadratic":
        return e * e
    if spec.kind == "absolute":
        return np.abs(e)

    scaled = spec.alpha * e
    if e.size and float(np.max(np.abs(scaled))) > LINEX_OVERFLOW_LIMIT:
        raise LossOverflowError(
            f"loss overflow: |alpha * e| exceeds {LINEX_OVERFLOW_LIMIT:g} for {spec.label}"
        )
    return _linex(scaled)


def loss(spec: LossSpec, e: float) -> float:
    """Loss of a single forecast error: e^2, |e| or exp(alpha e) - alpha e - 1."""
    if not math.isfinite(e):
        raise ValueError("forecast error must be finite")
    return float(loss_series(spec, np.array([e]))[0])
