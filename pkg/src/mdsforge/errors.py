"""Exception hierarchy shared across the package."""


class MdsForgeError(ValueError):
    """Base class for all validation errors raised by mdsforge."""


# fields
class NotPrimeError(MdsForgeError):
    pass


class ReducibleModulusError(MdsForgeError):
    pass


class SizeBoundError(MdsForgeError):
    pass


class FieldMismatchError(MdsForgeError):
    pass


class CharacteristicMismatchError(MdsForgeError):
    pass


class OrderNotDividingError(MdsForgeError):
    pass


class DuplicateAbscissaError(MdsForgeError):
    pass


# matrices
class DuplicatePointError(MdsForgeError):
    pass


class NotSquareError(MdsForgeError):
    pass


class SingularMatrixError(MdsForgeError):
    pass


class DimensionMismatchError(MdsForgeError):
    pass


# codes
class NotInformationSetError(MdsForgeError):
    pass


class TooLargeToEnumerateError(MdsForgeError):
    pass


class LengthMismatchError(MdsForgeError):
    pass


# constructions
class InvariantViolation(MdsForgeError):
    pass


class TooSmallError(MdsForgeError):
    pass


class ZeroLocatorError(MdsForgeError):
    """lambda_m for negative m needs every locator nonzero."""


class TooManySubsetsError(MdsForgeError):
    pass


class FirstKNotInformationSetError(MdsForgeError):
    pass


class FamilyMismatchError(MdsForgeError):
    pass


class OutOfStatedRangeError(MdsForgeError):
    pass


class BetaInBaseFieldError(MdsForgeError):
    pass


class RangeViolationError(MdsForgeError):
    pass


class ParseError(MdsForgeError):
    pass


class ConsistencyError(RuntimeError):
    """Two independent routes disagreed; indicates a bug, never bad input."""
