"""Exception hierarchy shared by every sectoria module."""


class SectoriaError(Exception):
    """Base class for library errors."""


class DimensionError(SectoriaError, ValueError):
    pass


class NotHermitianError(SectoriaError, ValueError):
    pass


class NotPSDError(SectoriaError, ValueError):
    pass


class SingularMatrixError(SectoriaError, ValueError):
    pass


class NotAccretiveError(SectoriaError, ValueError):
    pass


class NotSectorError(SectoriaError, ValueError):
    pass


class ConvergenceError(SectoriaError, ArithmeticError):
    """Raised when an iterative eigen-solver fails; carries the residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
