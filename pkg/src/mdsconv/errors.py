"""Exception hierarchy.  Every error raised on purpose derives from MdsConvError."""


class MdsConvError(Exception):
    pass


class NonPrimeCharacteristic(MdsConvError, ValueError):
    pass


class SizeLimitExceeded(MdsConvError, ValueError):
    pass


class DivisionByZero(MdsConvError, ZeroDivisionError):
    pass


class FieldMismatch(MdsConvError, ValueError):
    pass


class NoSuchRoot(MdsConvError, ValueError):
    pass


class RankDeficient(MdsConvError, ValueError):
    pass


class NotBasic(MdsConvError, ValueError):
    pass


class NotCoprime(MdsConvError, ValueError):
    pass


class CoefficientNotInBaseField(MdsConvError, ArithmeticError):
    pass


class RankConditionViolated(MdsConvError, ValueError):
    pass


class NotReducedBasic(MdsConvError, ArithmeticError):
    pass


class FieldNotQuadratic(MdsConvError, ValueError):
    pass


class UncertifiedDistance(MdsConvError, ValueError):
    pass


class BudgetExceeded(MdsConvError, RuntimeError):
    pass


class CatastrophicEncoder(MdsConvError, ValueError):
    pass


class InvalidCheckMatrix(MdsConvError, ValueError):
    pass


class NotCosetClosed(MdsConvError, ValueError):
    pass


class NotHermitianSelfOrthogonal(MdsConvError, ValueError):
    pass


class SymplecticCheckFailed(MdsConvError, ArithmeticError):
    pass


class ParityViolation(MdsConvError, ValueError):
    pass


class IndexOutOfRange(MdsConvError, ValueError):
    pass


class ParityMismatch(MdsConvError, ArithmeticError):
    """Claimed and computed parameters of a family instance differ."""


class VerificationFailed(MdsConvError):
    """A serialized record failed re-verification."""
