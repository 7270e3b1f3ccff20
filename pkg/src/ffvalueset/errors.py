"""Exception types raised across the package."""


class FFError(Exception):
    """Base class for all errors raised by ffvalueset."""


class NonPrimeCharacteristic(FFError, ValueError):
    pass


class ReducibleModulus(FFError, ValueError):
    pass


class MixedFields(FFError, TypeError):
    pass


class DivisionByZero(FFError, ZeroDivisionError):
    pass


class InvalidSubfieldOrder(FFError, ValueError):
    pass


class ArityMismatch(FFError, ValueError):
    pass


class VariableOutOfRange(FFError, ValueError):
    pass


class PolynomialSyntaxError(FFError, ValueError):
    """Malformed polynomial or element text; ``position`` is a 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class IncompleteTable(FFError, ValueError):
    pass


class DomainTooLarge(FFError, ValueError):
    pass


class InvalidBase(FFError, ValueError):
    pass


class NotReduced(FFError, ValueError):
    pass


class ZeroPolynomial(FFError, ValueError):
    pass


class ZeroDegree(FFError, ValueError):
    pass


class BudgetExceeded(FFError, ValueError):
    pass


class NoSuchExample(FFError, ValueError):
    pass
