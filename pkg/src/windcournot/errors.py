"""Exception types shared across the package."""

__all__ = [
    "ModelError",
    "AssumptionViolation",
    "BracketError",
    "ConvergenceError",
    "ConfigError",
    "OracleDisagreement",
]


class ModelError(Exception):
    """Base class for every error this package raises deliberately."""


class AssumptionViolation(ModelError):
    """Parameters fall outside the regime where the analysis is valid.

    Solvers refuse to produce a number rather than return one whose
    interpretation would be wrong.
    """


class BracketError(ModelError):
    """A root bracket did not have the sign pattern the model guarantees.

    Signals an inconsistent parameter set, not a numerical failure.
    """


class ConvergenceError(ModelError):
    """An iterative solve exhausted its iteration budget."""


class ConfigError(ModelError):
    """A run configuration failed validation."""


class OracleDisagreement(ModelError):
    """The independent grid oracle contradicts an analytic result."""
