"""Exception types raised across the package."""


class SierpcalcError(Exception):
    """Base class for every error raised by sierpcalc."""


class DigitOutOfRange(SierpcalcError, ValueError):
    """A digit does not fit the target radix of a digit-level transform."""


class ForbiddenPair(SierpcalcError, ValueError):
    """Two aligned binary expansions share a position with digits (1, 1)."""


class NotInSet(SierpcalcError, ValueError):
    """No admissible pair of binary expansions represents the point."""


class InconsistentSide(SierpcalcError, ValueError):
    """The side tag of a point contradicts its expansion structure."""


class DivisionByZeroPrime(SierpcalcError, ZeroDivisionError):
    """Division by an element whose real image is zero."""


class NotDifferentiable(SierpcalcError, ArithmeticError):
    """Numeric derivative estimates failed to stabilise."""


class MissingDerivative(SierpcalcError, ValueError):
    pass


class MissingAntiderivative(SierpcalcError, ValueError):
    pass


class ToleranceNotMet(SierpcalcError, ArithmeticError):
    """Adaptive quadrature hit its depth limit before meeting the tolerance."""


class InvalidResolution(SierpcalcError, ValueError):
    pass


class ExpansionTooLong(SierpcalcError, ValueError):
    """The repeating block of an expansion exceeds the configured digit budget."""
