"""Exception hierarchy shared by all modules."""


class HeunqmError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HeunqmError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class ConstraintError(HeunqmError, ValueError):
    """Parameter relations or class constraints cannot be satisfied."""


class InadmissibleError(HeunqmError, ValueError):
    """Parameters outside the admissible regime of a polynomial family."""


class BreakdownError(HeunqmError, ArithmeticError):
    """A recursion coefficient vanished where the recursion must divide by it."""


class NumericError(HeunqmError, RuntimeError):
    """A numerical routine failed to converge or produced unusable output."""
