"""Exception types raised across the package."""


class InvalidArgumentError(ValueError):
    """An input falls outside the documented domain of an operation."""


class ConfigError(ValueError):
    """A sweep configuration is inconsistent; raised before any evaluation."""


class NumericalInstabilityError(ArithmeticError):
    """A quantity that must be real and non-negative came out clearly otherwise."""
