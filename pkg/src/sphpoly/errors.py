"""Exception and warning types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition."""


class NumericalError(RuntimeError):
    """Raised when an iterative numerical procedure fails to converge."""


class ContinuationError(NumericalError):
    """Raised when an alpha-continuation path cannot be followed.

    ``last_alpha`` holds the last parameter value reached with an accepted
    corrector step.
    """

    def __init__(self, message: str, last_alpha: float):
        super().__init__(message)
        self.last_alpha = last_alpha


class IncompleteFiberWarning(RuntimeWarning):
    """Fewer fiber points were found than the degree of the Wronski map."""


class AmbiguousMultiplicityWarning(RuntimeWarning):
    """A root sits close to the origin but outside the clustering radius."""


class InconsistencyError(ValidationError):
    """A developing map does not fit the prescribed Fuchsian normal form."""
