"""Exception types shared across the package."""


class IetlabError(Exception):
    """Base class for all domain errors raised by this package."""


class MixedRadicand(IetlabError):
    """Arithmetic attempted between numbers with different radicands."""


class InvalidPermutation(IetlabError):
    """Sequence is not a permutation of 1..n, or n < 2."""


class NonPositiveLength(IetlabError):
    """An interval length is zero or negative."""


class OutOfDomain(IetlabError):
    """A point lies outside the interval it must belong to."""


class Reducible(IetlabError):
    """Permutation maps a proper prefix {1..k} onto itself."""


class NotAdmissible(IetlabError):
    """Interval fails the admissibility conditions for inducing."""


class ReturnTimeExceeded(IetlabError):
    """An orbit search ran past its step budget without returning."""


class DegenerateAt(IetlabError):
    """A shrinking chain hit a separation point exactly."""


class DepthExceeded(IetlabError):
    """A construction needs more orbit depth than was requested."""


class NotVerifiedIDOC(IetlabError):
    """Input failed, or was never put through, the distinct-orbit check."""


class ShapeViolation(IetlabError):
    """A strip incidence matrix is not identity plus one unit entry."""


class ClosedTransversalRequired(IetlabError):
    """Strip decomposition needs sigma(n) = sigma(1) - 1."""


class ConsistencyViolation(IetlabError):
    """An exact cross-check between two computations failed."""


class HorizonExceedsDepth(IetlabError):
    """Requested push horizon is beyond the computed chain."""


class ParseError(IetlabError):
    """Malformed input text: bad syntax, unknown or duplicate key."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.line = line
        self.column = column
