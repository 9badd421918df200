import numpy as np
import pytest

from horserace.types import ErrorPanel, QuarterlyPeriod

START = QuarterlyPeriod(2014, 1)


def error_panel(source: str, errors, horizon: int = 1, start: QuarterlyPeriod = START) -> ErrorPanel:
    return ErrorPanel(source, {(start + k, horizon): float(e) for k, e in enumerate(errors)})


@pytest.fixture()
def make_panel():
    """Build an ErrorPanel from a target-ordered error sequence starting at 2014Q1."""
    return error_panel


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240101)
