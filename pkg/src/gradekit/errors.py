"""Exception types shared across the package.

Every error that can be triggered by bad input data derives from
GradekitError so the CLI can map it to exit code 1 uniformly.
Cap-related errors signal "gave up", never a wrong answer.
"""


class GradekitError(Exception):
    pass


# -- fields ------------------------------------------------------------

class NonPrime(GradekitError):
    pass


class ReduciblePolynomial(GradekitError):
    pass


class FieldTooLarge(GradekitError):
    pass


class DivisionByZero(GradekitError):
    pass


class FieldMismatch(GradekitError):
    pass


class LogOfZero(GradekitError):
    pass


class TrivialUnitGroup(GradekitError):
    pass


# -- groups ------------------------------------------------------------

class NotLatinSquare(GradekitError):
    pass


class NoIdentity(GradekitError):
    pass


class NotAssociative(GradekitError):
    pass


class OrderTooLarge(GradekitError):
    pass


class NotNormal(GradekitError):
    pass


class TargetMismatch(GradekitError):
    pass


class NotSurjective(GradekitError):
    pass


class OrderTooLargeForIsoSearch(GradekitError):
    pass


class NotAHomomorphism(GradekitError):
    pass


# -- cocycles / cohomology ----------------------------------------------

class ZeroEntry(GradekitError):
    pass


class ZeroValue(GradekitError):
    pass


class NotACocycle(GradekitError):
    pass


class NotNormalized(GradekitError):
    pass


class GroupOrFieldMismatch(GradekitError):
    pass


class IncompatiblePullback(GradekitError):
    pass


# -- graded algebras / modules -------------------------------------------

class GradingError(GradekitError):
    pass


class UnitError(GradekitError):
    pass


class ModuleLawError(GradekitError):
    pass


class AlgebraMismatch(GradekitError):
    pass


class ZeroModule(GradekitError):
    pass


class NotStronglyGraded(GradekitError):
    pass


class Undetermined(GradekitError):
    """An exhaustive scan was refused because a size cap was exceeded."""


class CapExceededUndetermined(Undetermined):
    pass


# -- endomorphisms / splitting --------------------------------------------

class NotGradedSimple(GradekitError):
    pass


class ComponentNotLine(GradekitError):
    pass


class NotInvertible(GradekitError):
    pass


class SupportNotSubgroup(GradekitError):
    pass


class NoUnitInComponent(GradekitError):
    pass


class NotSemisimple(GradekitError):
    pass


class SplitBudgetExceeded(GradekitError):
    pass


# -- pipeline -------------------------------------------------------------

class NotBaseModule(GradekitError):
    pass


class NotAbsolutelySimple(GradekitError):
    def __init__(self, message, end_dim=None):
        super().__init__(message)
        self.end_dim = end_dim


class SplittingFails(GradekitError):
    def __init__(self, message, end_dim=None):
        super().__init__(message)
        self.end_dim = end_dim


# -- documents / cli --------------------------------------------------------

class ParseError(GradekitError):
    def __init__(self, message, where=None):
        if where is not None:
            message = f"{where}: {message}"
        super().__init__(message)
        self.where = where
