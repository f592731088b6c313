"""Exception hierarchy shared by all modules."""


class MetacoverError(Exception):
    """Base class for every error raised by the package."""


class OrderMismatch(MetacoverError, ValueError):
    """Operands live in different cyclotomic orders, or groups of different order."""


class NotDivisible(MetacoverError, ValueError):
    pass


class InvalidParams(MetacoverError, ValueError):
    pass


class BoundExceeded(MetacoverError, ValueError):
    pass


class InconsistentPresentation(MetacoverError, ValueError):
    pass


class PathDependence(MetacoverError, ValueError):
    pass


class InvalidData(MetacoverError, ValueError):
    pass


class NotPrime(MetacoverError, ValueError):
    pass


class TowerError(MetacoverError):
    pass


class ZeroModulus(TowerError, ValueError):
    pass


class NonInvertible(TowerError, ZeroDivisionError):
    """Inversion hit a zero divisor; ``witness`` multiplies the element to zero."""

    def __init__(self, message, element=None, witness=None):
        super().__init__(message)
        self.element = element
        self.witness = witness


class NotInvariant(TowerError, ValueError):
    pass


class NotInZLevel(TowerError, ValueError):
    pass


class ConstraintViolated(TowerError, ValueError):
    pass


class IdentityViolation(TowerError, AssertionError):
    """An identity that must hold in an accepted tower failed."""


class ParseError(MetacoverError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SchemaError(MetacoverError, ValueError):
    pass
