"""Exception types raised by the planner."""


class PlannerError(Exception):
    """Base class for every error the planner raises on purpose."""


class SchemaError(PlannerError):
    """Snapshot or config text does not match the expected shape."""


class ValidationError(PlannerError):
    """Input is well formed but violates a domain invariant."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class ConfigError(PlannerError):
    pass


class DomainError(PlannerError, ValueError):
    """Argument outside the domain of a numeric function."""


class DegenerateGeometry(PlannerError, ValueError):
    pass


class OutOfRegion(PlannerError, ValueError):
    pass


class ScoreUndefined(PlannerError):
    """Scoring was requested for an infeasible pass candidate."""


class NoFeasiblePass(PlannerError):
    pass


class BenchFailure(PlannerError):
    """A parallel run disagreed with the serial reference run."""
