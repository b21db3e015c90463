"""Exception hierarchy.

Every mathematical precondition failure derives from :class:`GeometryError`
so callers (and the command line front end) can catch one type and report
the concrete class name.
"""


class GeometryError(ValueError):
    """Base class for failed mathematical preconditions."""


class ArityError(TypeError):
    """Jets with different numbers of variables were combined."""


class NotDivisible(GeometryError):
    pass


class InsufficientOrder(GeometryError):
    pass


class NumericalFailure(GeometryError):
    pass


class InvalidData(GeometryError):
    pass


class SingularPoint(GeometryError):
    pass


# curves
class NotSingular(GeometryError):
    pass


class Degenerate(GeometryError):
    pass


class Not23Type(GeometryError):
    pass


# surfaces
class NotAdapted(GeometryError):
    pass


class NotCuspidalEdge(GeometryError):
    pass


class NotFront(NotCuspidalEdge):
    pass


class DegenerateBoundary(GeometryError):
    pass


class LinearSolveFailure(GeometryError):
    """The reduced jets do not have the expected sparsity pattern."""


# boundary
class NotCase1(GeometryError):
    pass


class NotCase2(GeometryError):
    pass


class DegenerateContact(GeometryError):
    pass


class DegenerateInvariant(GeometryError):
    pass


# curvature parabola
class WrongRank(GeometryError):
    pass


class NotDefined(GeometryError):
    pass


class HypothesisFailed(GeometryError):
    pass
