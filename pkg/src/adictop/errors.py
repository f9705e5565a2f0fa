"""Exception hierarchy shared by every adictop module."""


class AdictopError(Exception):
    """Base class for all library errors."""

    #: exit status used by the command-line front end
    exit_code = 2


class DomainError(AdictopError, ValueError):
    """An argument lies outside the domain of the operation (zero divisor,
    ground-field mismatch, coincident points, ...)."""


class PreconditionError(AdictopError, ValueError):
    """A documented precondition of the operation does not hold."""


class InfeasibleError(AdictopError, ValueError):
    """A system of congruences or equations has no solution."""


class PrecisionError(AdictopError, ArithmeticError):
    """Not enough local precision to carry out the request honestly."""


class SingularError(AdictopError, ArithmeticError):
    """A derivative or Jacobian determinant fails to be a unit."""


class NoConvergenceError(AdictopError, ArithmeticError):
    """The Newton iteration is not guaranteed to converge from the seed."""


class UnboundedError(AdictopError, ValueError):
    """The set is not bounded in the requested topology."""


class UnsupportedError(AdictopError, NotImplementedError):
    """The combination of descriptors is outside the supported fragment."""


class NotIndependentError(AdictopError, ValueError):
    """The two topologies share a valuation, so no independence witness exists."""


class ParseError(AdictopError, ValueError):
    """Malformed element, polynomial or descriptor text."""

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None and text:
            message = f"{message} at position {position}:\n  {text}\n  {' ' * position}^"
        super().__init__(message)
