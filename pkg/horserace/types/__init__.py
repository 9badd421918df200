import math
import numbers
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Literal, Mapping, TypeAlias, get_args

import numpy as np

Number: TypeAlias = int | float
LossKind = Literal["quadratic", "absolute", "linex"]
CvSource = Literal["fixed_b", "fixed_b_simulated", "standard_normal"]

_PERIOD_PATTERN = re.compile(r"^\s*(\d{4})\s*[.\-]?\s*[Qq]([1-4])\s*$")
_LINEX_PATTERN = re.compile(r"^\s*linex\s*\(\s*([^)]+?)\s*\)\s*$", re.IGNORECASE)


@dataclass(frozen=True, slots=True, order=True)
class QuarterlyPeriod:
    """Calendar quarter. Ordered lexicographically by (year, quarter)."""

    year: int
    quarter: int

    def __post_init__(self):
        if self.quarter not in (1, 2, 3, 4):
            raise ValueError(f"quarter must be in 1..4, got {self.quarter}")

    @classmethod
    def parse(cls, token: str) -> "QuarterlyPeriod":
        """Parse `2014Q1` (canonical), `2014.Q1` or `2014-Q1`."""
        match = _PERIOD_PATTERN.match(token)
        if not match:
            raise ValueError(f"invalid quarterly period {token!r}, expected YYYYQn")
        return cls(int(match[1]), int(match[2]))

    @classmethod
    def from_ordinal(cls, ordinal: int) -> "QuarterlyPeriod":
        year, index = divmod(ordinal, 4)
        return cls(year, index + 1)

    @property
    def ordinal(self) -> int:
        return self.year * 4 + self.quarter - 1

    def range_to(self, end: "QuarterlyPeriod") -> list["QuarterlyPeriod"]:
        """Inclusive range of quarters from self to end (empty if end precedes self)."""
        return [QuarterlyPeriod.from_ordinal(o) for o in range(self.ordinal, end.ordinal + 1)]

    def __add__(self, quarters: int) -> "QuarterlyPeriod":
        if not isinstance(quarters, numbers.Integral) or isinstance(quarters, bool):
            return NotImplemented
        return QuarterlyPeriod.from_ordinal(self.ordinal + int(quarters))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QuarterlyPeriod):
            return self.ordinal - other.ordinal
        if isinstance(other, numbers.Integral) and not isinstance(other, bool):
            return QuarterlyPeriod.from_ordinal(self.ordinal - int(other))
        return NotImplemented

    def __str__(self) -> str:
        return f"{self.year}Q{self.quarter}"


@dataclass(frozen=True, slots=True, order=True)
class MonthlyPeriod:
    """Calendar month, only used to date survey publications."""

    year: int
    month: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be in 1..12, got {self.month}")

    @property
    def quarter(self) -> QuarterlyPeriod:
        return QuarterlyPeriod(self.year, (self.month - 1) // 3 + 1)

    def __str__(self) -> str:
        return f"{self.year}-{self.month:02d}"


@dataclass(frozen=True, slots=True)
class RealizationSeries:
    """Contiguous quarterly series: value k belongs to `start + k`."""

    start: QuarterlyPeriod
    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("a realization series needs at least one value")
        if not all(math.isfinite(v) for v in values):
            raise ValueError("realization values must be finite")
        object.__setattr__(self, "values", values)

    @property
    def end(self) -> QuarterlyPeriod:
        return self.start + (len(self.values) - 1)

    def __len__(self) -> int:
        return len(self.values)

    def periods(self) -> list[QuarterlyPeriod]:
        return self.start.range_to(self.end)

    def index_of(self, period: QuarterlyPeriod) -> int | None:
        index = period - self.start
        if 0 <= index < len(self.values):
            return index
        return None

    def get(self, period: QuarterlyPeriod) -> float | None:
        index = self.index_of(period)
        return None if index is None else self.values[index]

    def to_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


PanelKey: TypeAlias = tuple[QuarterlyPeriod, int]


def _freeze_entries(entries: Mapping[PanelKey, float], what: str) -> Mapping[PanelKey, float]:
    frozen: dict[PanelKey, float] = {}
    for (period, horizon), value in dict(entries).items():
        if horizon < 0:
            raise ValueError(f"negative horizon {horizon} in {what} at {period}")
        frozen[(period, int(horizon))] = float(value)
    return MappingProxyType(frozen)


@dataclass(frozen=True, slots=True)
class ForecastPanel:
    """Forecasts keyed by (origin, horizon). Horizon 0 is the nowcast."""

    source: str
    entries: Mapping[PanelKey, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze_entries(self.entries, "forecast panel"))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[PanelKey, float]]:
        """Iterate entries sorted by origin, then horizon."""
        return iter(sorted(self.entries.items()))

    def get(self, origin: QuarterlyPeriod, horizon: int) -> float | None:
        return self.entries.get((origin, horizon))

    def horizons(self) -> list[int]:
        return sorted({horizon for _, horizon in self.entries})

    def origins(self) -> list[QuarterlyPeriod]:
        return sorted({origin for origin, _ in self.entries})


@dataclass(frozen=True, slots=True)
class ErrorPanel:
    """Forecast errors (realization minus forecast) keyed by (target period, horizon)."""

    source: str
    entries: Mapping[PanelKey, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze_entries(self.entries, "error panel"))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[PanelKey, float]]:
        return iter(sorted(self.entries.items()))

    def horizons(self) -> list[int]:
        return sorted({horizon for _, horizon in self.entries})

    def targets(self, horizon: int) -> list[QuarterlyPeriod]:
        return sorted(target for target, h in self.entries if h == horizon)

    def series(self, horizon: int) -> list[tuple[QuarterlyPeriod, float]]:
        """Target-ordered errors at one horizon."""
        return [(target, self.entries[(target, horizon)]) for target in self.targets(horizon)]

    def span(self) -> tuple[QuarterlyPeriod, QuarterlyPeriod] | None:
        if not self.entries:
            return None
        targets = [target for target, _ in self.entries]
        return min(targets), max(targets)


@dataclass(frozen=True, slots=True)
class SurveyRecord:
    """Fixed-event survey forecast of Q4-on-Q4 inflation for `target_year`."""

    publication: MonthlyPeriod
    target_year: int
    value: float

    def __post_init__(self):
        if self.target_year not in (self.publication.year, self.publication.year + 1):
            raise ValueError(
                f"survey target year {self.target_year} must be the publication year {self.publication.year} "
                "or the following one"
            )
        if not math.isfinite(self.value):
            raise ValueError("survey value must be finite")


@dataclass(frozen=True, slots=True)
class ARFit:
    """Least-squares AR(p) fit with intercept on one window."""

    lag_order: int
    intercept: float
    coefficients: tuple[float, ...]
    residual_variance: float
    window_length: int
    n_eff: int
    aic: float

    def __post_init__(self):
        if len(self.coefficients) != self.lag_order:
            raise ValueError("coefficient count must equal the lag order")
        if self.residual_variance < 0:
            raise ValueError("residual variance must be nonnegative")

    def unconditional_mean(self) -> float:
        return self.intercept / (1.0 - sum(self.coefficients))

    def is_stable(self) -> bool:
        """True when every root of the lag polynomial lies outside the unit circle."""
        roots = np.roots([1.0, *(-c for c in self.coefficients)])
        return bool(np.all(np.abs(roots) < 1.0))


@dataclass(frozen=True, slots=True)
class LossSpec:
    kind: LossKind
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in get_args(LossKind):
            raise ValueError(f"loss kind must be one of {get_args(LossKind)}, got {self.kind!r}")
        if self.kind == "linex":
            if self.alpha is None or self.alpha == 0 or not math.isfinite(self.alpha):
                raise ValueError("linex loss needs a finite nonzero alpha")
            object.__setattr__(self, "alpha", float(self.alpha))
        else:
            object.__setattr__(self, "alpha", None)

    @classmethod
    def parse(cls, token: str) -> "LossSpec":
        """Parse `quadratic`, `absolute` or `linex(<alpha>)`."""
        if match := _LINEX_PATTERN.match(token):
            try:
                alpha = float(match[1])
            except ValueError as exc:
                raise ValueError(f"invalid linex parameter in {token!r}") from exc
            return cls("linex", alpha)
        return cls(token.strip().lower())  # type: ignore[arg-type]

    @property
    def label(self) -> str:
        if self.kind == "linex":
            return f"linex({self.alpha:g})"
        return self.kind

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True, slots=True)
class SummaryStats:
    n: int
    mean: float
    median: float
    mae: float
    mdae: float
    std: float
    max: float
    min: float
    skew: float
    ac1: float
    ac4: float


@dataclass(frozen=True, slots=True)
class DMOutcome:
    """Diebold-Mariano test result. A negative statistic means the first forecast has lower loss."""

    statistic: float
    n: int
    bandwidth: int
    b_ratio: float
    mean_differential: float
    lrv: float
    cv10: float
    cv05: float
    reject10: bool
    reject05: bool
    cv_source: CvSource
    normal_cv10: float
    normal_cv05: float


@dataclass(frozen=True, slots=True)
class MZOutcome:
    """Rationality regression of realizations on forecasts with HAC (Bartlett) standard errors."""

    intercept: float
    slope: float
    joint_wald: float
    wald_pvalue: float
    se_intercept: float
    se_slope: float
    n: int
    bandwidth: int


@dataclass(frozen=True, slots=True)
class FluctuationPoint:
    """One rolling window: either an outcome or the reason code of a degenerate window."""

    end: QuarterlyPeriod
    outcome: DMOutcome | None
    reason: str | None = None


@dataclass(frozen=True, slots=True)
class DMSizeResult:
    n: int
    bandwidth: int
    reps: int
    reject10_fixed_b: float
    reject05_fixed_b: float
    reject10_normal: float
    reject05_normal: float
