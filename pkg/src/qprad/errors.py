"""Exception types shared across the package."""


class QpradError(Exception):
    """Base class for package errors."""


class ConfigError(QpradError):
    """Invalid or inconsistent configuration input."""


class DataError(QpradError):
    """Malformed or out-of-contract data input."""


class IntegrationError(QpradError):
    """Numerical integration left the physically valid domain."""
