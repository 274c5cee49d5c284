"""Exception hierarchy shared by all modules."""


class FracGreenError(Exception):
    """Base class for library errors."""


class DomainError(FracGreenError, ValueError):
    """An argument lies outside the domain of the operation."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class PoleError(DomainError):
    """Gamma-type function evaluated at a pole."""


class NumericalError(FracGreenError, ArithmeticError):
    """A numerical procedure could not reach its tolerance."""


class ConvergenceError(NumericalError):
    pass


class CancellationError(NumericalError):
    pass


class TruncationError(NumericalError):
    pass


class InstabilityError(NumericalError):
    pass
