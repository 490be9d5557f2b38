"""Exception hierarchy shared by the weaver modules."""


class WeaverError(Exception):
    """Base class for every error raised by this package."""


class DomainError(WeaverError, ValueError):
    """Invalid parameter (strand count, repetitions, crossing number, ...)."""


class TopologyError(WeaverError):
    """A triangulation failed a combinatorial sanity check."""


class InfeasibleError(WeaverError):
    """No interior angle structure could be found."""


class BoundaryCollapse(WeaverError):
    """Volume maximization was driven to the boundary of the angle polytope."""


class MaxIterations(WeaverError):
    """Volume maximization ran out of iterations before converging."""


class DegenerateShape(WeaverError):
    """An angle is too close to 0 to define a shape parameter."""


class PathError(WeaverError):
    """A peripheral curve could not be located or traced."""
