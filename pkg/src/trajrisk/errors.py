"""Exception hierarchy shared by every module.

Errors fall in two families that the CLI maps to distinct exit codes:
configuration problems (bad parameters, inconsistent specs) and data
problems (too little data, malformed files, degenerate designs).
"""


class TrajRiskError(Exception):
    """Base class for all package errors."""


class ConfigError(TrajRiskError, ValueError):
    """Invalid parameters or configuration."""


class InvalidModelError(ConfigError):
    """A process model violates its invariants."""


class InvalidInputError(ConfigError):
    """Malformed call arguments (empty windows, dimension mismatch)."""


class DataError(TrajRiskError, ValueError):
    """Data cannot support the requested computation."""


class InvalidLengthError(DataError):
    """A path is too short for the requested operation."""


class InsufficientDataError(DataError):
    """Not enough observations, windows, or sessions."""


class DegenerateDesignError(DataError):
    """All regressors vanish, so the least-squares denominator is zero."""


class IngestionError(DataError):
    """A tick file has unparseable or out-of-order rows."""

    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = tuple(rows)
