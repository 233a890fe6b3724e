"""Exception types shared across the package."""


class NullConeError(ArithmeticError):
    """Raised when an operation needs an invertible bicomplex value but got a zero divisor."""


class DomainError(ValueError):
    """Raised for quantum numbers or arguments outside their admissible range."""


class GridError(ValueError):
    """Raised when a quadrature grid violates its invariants."""
