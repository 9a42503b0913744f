"""Exception hierarchy.

Parameter problems subclass :class:`ParameterError` (a ``ValueError``) so the
CLI can map them to exit code 2; :class:`BudgetExceeded` maps to exit code 3.
"""


class KasamiError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(KasamiError, ValueError):
    pass


class NotOddPrime(ParameterError):
    pass


class KEqualsM(ParameterError):
    pass


class TNotDividingD(ParameterError):
    pass


class DegreeOverflow(ParameterError):
    pass


class FactorizationLimitExceeded(ParameterError):
    pass


class NotInSubfield(ParameterError):
    pass


class AlphaNotInSubfield(NotInSubfield):
    pass


class NonDividingDegrees(ParameterError):
    pass


class LengthMismatch(ParameterError):
    pass


class ZeroCoefficient(ParameterError):
    pass


class ZeroPair(ParameterError):
    pass


class TauOutOfRange(ParameterError):
    pass


class MissingGamma(ParameterError):
    pass


class UnexpectedGamma(ParameterError):
    pass


class Order3NotCovered(ParameterError):
    """The closed third moment is only known when d' = d."""


class BudgetExceeded(KasamiError):
    pass


class MassMismatch(KasamiError):
    """A closed-form table does not sum to its domain size (transcription guard)."""


class UnrecognizedValue(KasamiError):
    pass


class CoefficientsNotInSubfield(KasamiError):
    pass
