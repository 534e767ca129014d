"""Semantic exception hierarchy shared across the package."""


class KemenyError(Exception):
    """Base class for all package errors."""


class ValidationError(KemenyError, ValueError):
    """Inputs violate a contract: bad domain, shape, or type."""


class LengthMismatchError(ValidationError):
    """Paired vectors have different lengths."""


class DegenerateInputError(ValidationError):
    """A constant (zero-spread) vector where a non-degenerate one is required."""


class ConvergenceError(KemenyError, ArithmeticError):
    """An iterative routine failed to converge within its budget."""


class DataError(KemenyError, ValueError):
    """Dataset ingestion failed (parse error, ragged rows, missing column)."""


class ConfigError(KemenyError, ValueError):
    """A configuration object is internally inconsistent."""
