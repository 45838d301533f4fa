"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: usage errors exit 2, resource-guard
errors exit 3.
"""


class ToricDesignError(Exception):
    """Base class for all library errors."""


class UsageError(ToricDesignError, ValueError):
    """Arguments violate an operation's preconditions."""


class DomainError(ToricDesignError, ArithmeticError):
    """A mathematically undefined operation, e.g. inverting zero."""


class ResourceError(ToricDesignError, RuntimeError):
    """The requested object exceeds a size guard."""
