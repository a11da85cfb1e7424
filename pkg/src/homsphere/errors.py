"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`HomsphereError`.  Precondition failures additionally derive from
``ValueError`` so callers that only care about bad input can catch that.
"""


class HomsphereError(Exception):
    """Base class for all package errors."""


class InvalidComplex(HomsphereError, ValueError):
    pass


class InvalidGraph(HomsphereError, ValueError):
    pass


class NotPrime(HomsphereError, ValueError):
    pass


# core complex operations
class FacetNotFound(HomsphereError, KeyError):
    pass


class FaceNotFound(HomsphereError, KeyError):
    pass


class NotReverseStellatable(HomsphereError, ValueError):
    pass


class NotPure(HomsphereError, ValueError):
    pass


class RidgeOveruse(HomsphereError, ValueError):
    pass


class NotClosedPseudomanifold(HomsphereError, ValueError):
    pass


class DimensionMismatch(HomsphereError, ValueError):
    pass


class NotInduced(HomsphereError, ValueError):
    pass


class DuplicateFaceAfterGluing(HomsphereError, ValueError):
    pass


# linear algebra
class NonConvergence(HomsphereError, ArithmeticError):
    pass


# graph toolkit
class TooLarge(HomsphereError, ValueError):
    pass


class Disconnected(HomsphereError, ValueError):
    pass


class ConditionViolated(HomsphereError):
    """A quasi-isometry relation fails one of its three conditions.

    ``index`` is the 1-based condition number, ``witness`` a tuple of the
    offending vertices.
    """

    def __init__(self, index, witness, message=None):
        self.index = index
        self.witness = witness
        super().__init__(message or f"condition ({index}) violated at {witness!r}")


class NotFourRegular(HomsphereError, ValueError):
    pass


class AmbiguousGadgets(HomsphereError, ValueError):
    pass


class DegreeTooLow(HomsphereError, ValueError):
    pass


class NoPendants(HomsphereError, ValueError):
    pass


# disk filling
class MTooSmall(HomsphereError, ValueError):
    pass


class NotSpanning(HomsphereError, ValueError):
    pass


class EdgeOveruse(HomsphereError, ValueError):
    pass


class EmptyResult(HomsphereError, ValueError):
    pass


# facet colour codec
class NotManifoldLike(HomsphereError, ValueError):
    pass


class TooManyColors(HomsphereError, ValueError):
    pass


class StuckCollapse(HomsphereError, ValueError):
    pass


class UnknownPaletteSize(HomsphereError, ValueError):
    pass


class InconsistentLabels(HomsphereError, ValueError):
    pass


class PropagationConflict(HomsphereError, ValueError):
    pass


class ValidationFailed(HomsphereError, ValueError):
    pass


# dual graph codec
class QuotientDegenerate(HomsphereError, ValueError):
    pass


class DuplicateFacet(HomsphereError, ValueError):
    pass


class AmbiguousNeighbor(HomsphereError, ValueError):
    pass


class InconsistentOrder(HomsphereError, ValueError):
    pass


# telescopes
class NoGoodLift(HomsphereError):
    def __init__(self, best, threshold):
        self.best = best
        self.threshold = threshold
        super().__init__(
            f"best signed spectral radius {best:.6f} exceeds threshold {threshold:.6f}"
        )


class InvariantViolation(HomsphereError, ValueError):
    pass


class Stuck(HomsphereError):
    """Greedy collapse ran out of free faces; ``core`` is what is left."""

    def __init__(self, core):
        self.core = core
        super().__init__(f"collapse stuck with {len(core.facets)} facets left")


class ScheduleError(HomsphereError):
    pass


# handle plans
class StarTooBig(HomsphereError, ValueError):
    def __init__(self, vertex, size, k):
        self.vertex = vertex
        self.size = size
        self.k = k
        super().__init__(f"star of vertex {vertex} has {size} faces > k={k}")


# io
class ParseError(HomsphereError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip())
