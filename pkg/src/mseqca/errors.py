"""Exception hierarchy shared by every module."""


class MseqcaError(Exception):
    """Base class for all library errors."""


class NonPrime(MseqcaError):
    pass


class NonPrimitivePolynomial(MseqcaError):
    pass


class TableCapExceeded(MseqcaError):
    pass


class ZeroInverse(MseqcaError, ZeroDivisionError):
    pass


class LogOfZero(MseqcaError):
    pass


class NonPrimitiveExponent(MseqcaError):
    pass


class BadModulus(MseqcaError):
    pass


class EmptyColumnSet(MseqcaError):
    pass


class WrongColumnSet(MseqcaError):
    pass


class NotACoveringArray(MseqcaError):
    pass


class AlphabetTooSmall(MseqcaError):
    pass


class PostVerificationFailed(MseqcaError):
    pass


class BadSubset(MseqcaError):
    pass


class BadStrength(MseqcaError):
    pass


class ZeroColumn(MseqcaError):
    pass


class BadSize(MseqcaError):
    pass


class BadCandidate(MseqcaError):
    pass


class BudgetExhausted(MseqcaError):
    """Raised only when a caller asks for strict budgets; normal runs report exhausted=False."""


class NotEnoughRepresentatives(MseqcaError):
    pass


class NotTMinusOneSet(MseqcaError):
    pass


class BadInput(MseqcaError, ValueError):
    pass


class RecipeError(MseqcaError):
    pass


class MissingKey(RecipeError):
    pass


class UnknownKey(RecipeError):
    pass


class MalformedValue(RecipeError):
    pass
