"""Exception hierarchy.

Two families matter to callers: ``ValidationError`` (bad input or bad
parameters) and ``UndefinedIndexError`` (the input is valid but the
requested quantity does not exist for it). The CLI maps them to exit
codes 2 and 3; ``InvariantBreach`` maps to 4.
"""


class InequalityError(Exception):
    """Base class for all package errors."""


class ValidationError(InequalityError, ValueError):
    pass


class UndefinedIndexError(InequalityError, ArithmeticError):
    pass


class InvariantBreach(InequalityError, AssertionError):
    """An algebraic identity failed beyond tolerance. Should never fire."""


# validation
class EmptyInput(ValidationError):
    pass


class NegativeIncome(ValidationError):
    pass


class NonPositiveWeight(ValidationError):
    pass


class InvalidGroupCount(ValidationError):
    pass


class InvalidPercents(ValidationError):
    pass


class NonPositiveEpsilon(ValidationError):
    pass


class EmptyGroup(ValidationError):
    pass


class InconsistentHierarchy(ValidationError):
    pass


class MissingGroupColumn(ValidationError):
    pass


class TooFewRecords(ValidationError):
    pass


class UnknownAxiom(ValidationError):
    pass


class UnknownIndex(ValidationError):
    pass


class OrderBreakingTransfer(ValidationError):
    pass


class NegativeResultingIncome(ValidationError):
    pass


# undefined quantities
class UndefinedForZeroMax(UndefinedIndexError):
    pass


class UndefinedForZeroMean(UndefinedIndexError):
    pass


class UndefinedForZeroTotal(UndefinedIndexError):
    pass


class ZeroIncomeWithNonpositiveAlpha(UndefinedIndexError):
    pass


class ZeroBottomDecile(UndefinedIndexError):
    pass


class ZeroBottomShare(UndefinedIndexError):
    pass


class ZeroMinimumIncome(UndefinedIndexError):
    pass


class DegenerateEquality(UndefinedIndexError):
    pass


class SingleElementPopulation(UndefinedIndexError):
    pass


class IndexUndefinedOnResample(UndefinedIndexError):
    pass
