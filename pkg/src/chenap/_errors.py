"""Exception hierarchy shared by all modules."""


class ChenAPError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ChenAPError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(ChenAPError):
    """A request exceeds the configured size or memory limits."""


class DependencyError(ChenAPError):
    """A required precomputed table is missing or too small."""


class NumericalError(ChenAPError, ArithmeticError):
    """A numerical routine failed to reach its requested accuracy."""
