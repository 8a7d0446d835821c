"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the region where an operation is defined."""


class MomentUndefinedError(DomainError):
    """The requested moment does not exist for the given shape."""


class ConsistencyError(ArithmeticError):
    """Two independent evaluation routes disagree beyond tolerance."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance."""


class IterationCapError(RuntimeError):
    """A rejection loop exceeded its safety cap.

    Rejection loops terminate with probability one when the envelope really
    dominates the target, so hitting the cap means a violated precondition.
    """
