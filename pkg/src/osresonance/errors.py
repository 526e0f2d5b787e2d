"""Exception hierarchy.

Every error raised for bad input or an infeasible request derives from
:class:`DomainError`; the CLI maps those to exit code 1.
"""


class DomainError(Exception):
    """Base class for all library errors."""


class InputError(DomainError, ValueError):
    """Malformed or out-of-contract input."""


# incidence
class ZeroLine(InputError):
    pass


class DuplicateLine(InputError):
    pass


class PairCollision(InputError):
    pass


class BadIndex(InputError):
    pass


class BadParam(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


# qforms
class InvalidCollection(InputError):
    pass


# vinberg
class NotSymmetric(InputError):
    pass


class BadOffDiagonal(InputError):
    pass


class InternalTrichotomyError(DomainError, RuntimeError):
    """A positive semidefinite indecomposable block had nullity != 1 or a
    kernel vector that is not positive."""


class TrichotomyViolation(DomainError, RuntimeError):
    """Block types of one matrix contradict the affine/indefinite dichotomy."""


# resonance
class NotSumZero(InputError):
    pass


class ZeroWeight(InputError):
    pass


class SearchBudgetExceeded(DomainError):
    pass


class VerificationError(DomainError, RuntimeError):
    """A computed object failed its a-posteriori check."""


# labelings
class Disconnected(InputError):
    pass


class NotInN(InputError):
    pass


class NotAffine(InputError):
    pass


# realizer
class BadMatrix(InputError):
    pass


class NotDisjoint(InputError):
    pass


class BadNormalization(InputError):
    pass


class Inapplicable(InputError):
    pass


# pencils
class FlatNotInArrangement(InputError):
    pass
