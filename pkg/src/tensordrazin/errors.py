"""Exception hierarchy shared by every module."""


class TensorError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(TensorError, ValueError):
    """Operand mode dimensions do not conform."""


class ConvergenceFailure(TensorError, ArithmeticError):
    """A dense kernel or a series failed to converge."""


class ZeroTensor(TensorError, ValueError):
    pass


class IndexNotOne(TensorError, ValueError):
    """The tensor has index greater than one, so no group inverse exists."""


class CandidateInvalid(TensorError, ValueError):
    pass


class Inconsistent(TensorError, ValueError):
    """Right-hand side is not in the range of A^k."""


class NotConvergent(TensorError, ValueError):
    """Spectral radius too close to (or above) one for a Neumann series."""


class ZeroDiagonal(TensorError, ZeroDivisionError):
    pass


class Diverged(TensorError, ArithmeticError):
    """A stationary iteration blew up. The partial report is attached."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class Unsupported(TensorError, NotImplementedError):
    pass
