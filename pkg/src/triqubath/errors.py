"""Exception types shared across the package."""


class TriqubathError(Exception):
    """Base class for all package errors."""


class ConfigError(TriqubathError):
    """Invalid configuration file, field, or CLI argument."""


class NumericalError(TriqubathError):
    """A numerical routine failed to reach its accuracy target."""


class ValidationError(TriqubathError):
    """A state or operator violates a required invariant."""
