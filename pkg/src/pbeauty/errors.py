class DomainError(ValueError):
    """An argument lies outside the domain where the formula is defined."""


class NoRootError(DomainError):
    """The advantage function has no root in (1/2, 1) for these parameters."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""
