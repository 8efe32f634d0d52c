"""Exception hierarchy shared by every module of the package."""


class QKreinError(Exception):
    """Base class for all errors raised by qkrein."""


class ContractViolation(QKreinError, ValueError):
    """An input does not satisfy an operation's precondition.

    Examples are a non-Hermitian matrix handed to the Hermitian eigensolver,
    mismatched dimensions, or a degenerate space where a J-norm is requested.
    """


class SingularMatrixError(QKreinError, ZeroDivisionError):
    """A matrix (or a scalar) that must be inverted is numerically singular."""


class NumericFailure(QKreinError, ArithmeticError):
    """An iterative method did not converge.

    Parameters
    ----------
    message : str
        Human readable description.
    history : list of float, optional
        Convergence history accumulated before giving up.
    partial : object, optional
        Last iterate or partial result, useful for diagnostics.
    """

    def __init__(self, message, history=None, partial=None):
        super().__init__(message)
        self.history = list(history) if history is not None else []
        self.partial = partial


class DivergenceError(NumericFailure):
    """A series was requested for an operator whose spectral radius is >= 1."""


class ScaffoldRefused(QKreinError):
    """The Stein solution is not positive definite, so no scaffold is built.

    The eigenvalues of the offending solution are kept in ``eigenvalues`` as
    the certificate of indefiniteness.
    """

    def __init__(self, message, eigenvalues):
        super().__init__(message)
        self.eigenvalues = [float(x) for x in eigenvalues]
