"""Exception hierarchy shared by every module."""


class MonoglueError(Exception):
    """Base class for all library errors."""


class DegreeExceeded(MonoglueError):
    """A word is longer than the presentation's saturation degree."""

    def __init__(self, degree, bound):
        super().__init__(f"word of degree {degree} exceeds saturation bound {bound}")
        self.degree = degree
        self.bound = bound


class Unbounded(MonoglueError):
    """A bounded search ended without a definitive answer."""


class TruncatedEnumeration(Unbounded):
    """An enumeration was cut off; counts are lower bounds."""


class InvalidMonoid(MonoglueError):
    """A table or presentation violates the monoid axioms."""


class InvalidHom(MonoglueError):
    """Generator images do not define a homomorphism."""


class InvalidAction(MonoglueError):
    """An action table does not define an M-set."""


class InconsistencyError(MonoglueError):
    """Two independent verdict routes disagree."""


class CocycleViolation(MonoglueError):
    """Gluing data fails the inverse or cocycle conditions."""


class NotACovering(MonoglueError):
    """A family of basic opens does not cover."""


class RefinementFailure(MonoglueError):
    """Two base-change data could not be compared on a common refinement."""
