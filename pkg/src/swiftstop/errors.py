"""Exception types shared by all modules."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class RegimeError(ValueError):
    """Inputs are valid numbers but outside the asymptotic regime handled here.

    Raised e.g. for a negative Bethe logarithm or when the exact s-wave
    series would need a non-principal branch (strong attraction, low v).
    """


class RegimeWarning(UserWarning):
    """An expansion is being used outside its stated range of validity."""


class ConvergenceError(RuntimeError):
    """A quadrature or series failed to converge; carries the best estimate."""

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
