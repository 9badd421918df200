class HorseraceError(ValueError):
    pass


class ConfigError(HorseraceError):
    pass


class IngestionError(HorseraceError):
    """Malformed input file. `line` is the 1-based line number in `path` when known."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line

        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")


class AmbiguousSurveyError(IngestionError):
    pass


class ComputationError(HorseraceError):
    reason: str = "computation_error"


class InsufficientDataError(ComputationError):
    reason = "insufficient_observations"


class EmptySubsampleError(ComputationError):
    reason = "empty_subsample"


class DegenerateSampleError(ComputationError):
    reason = "degenerate_sample"


class DegenerateWindowError(ComputationError):
    reason = "degenerate_window"


class CollinearWindowError(ComputationError):
    reason = "collinear_window"


class SingularDesignError(ComputationError):
    reason = "singular_design"


class LossOverflowError(ComputationError):
    reason = "loss_overflow"


class DegenerateDifferentialError(ComputationError):
    reason = "degenerate_differential"
