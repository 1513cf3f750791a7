"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class AccuracyError(RuntimeError):
    """A quadrature or linear solve failed to reach its accuracy target."""


class InversionError(RuntimeError):
    """Bracketing or monotonicity failed while inverting a parameter map."""


class ConsistencyError(RuntimeError):
    """A computed solution violated an invariant it must satisfy."""
