"""Exception hierarchy.

Every domain failure derives from :class:`ToricError`; the CLI maps those to
exit code 1.
"""


class ToricError(Exception):
    """Base class for domain errors."""


class ZeroVector(ToricError, ValueError):
    pass


class Unbounded(ToricError):
    pass


class Empty(ToricError):
    pass


class ResourceLimit(ToricError):
    pass


class DimensionMismatch(ToricError, ValueError):
    pass


# fans
class NotAFan(ToricError):
    pass


class NotStronglyConvex(NotAFan):
    pass


class DuplicateRay(NotAFan):
    pass


class RayExists(ToricError):
    pass


class OutsideSupport(ToricError):
    pass


class NotFullDimensional(ToricError):
    pass


class NotSimplicial(ToricError):
    pass


class TriangulationFailure(ToricError):
    pass


# divisors and singularities
class NonIntegral(ToricError):
    pass


class NotBig(ToricError):
    pass


class NotQCartier(ToricError):
    pass


class ZariskiAbsent(ToricError):
    pass


class NotKltCandidate(ToricError):
    pass


# mmp
class NotKNegative(ToricError):
    pass


class FiberType(ToricError):
    pass


class NonConvexStar(ToricError):
    pass


class IterationLimit(ToricError):
    pass


class InternalConsistencyError(ToricError):
    """Two independent computations of the same quantity disagreed."""


# pipeline
class DiagramInvariantViolation(ToricError):
    def __init__(self, arrow, message):
        super().__init__(f"arrow {arrow}: {message}")
        self.arrow = arrow


class NotFano(ToricError):
    pass


class DimensionLimit(ToricError):
    pass


# io
class ParseError(ToricError):
    pass


class ArityError(ParseError):
    pass
