"""Exception types raised by the psdapprox package.

All indices carried by exceptions are 0-based, matching the Python API.
The command line front end converts to 1-based indices for messages.
"""


class PsdApproxError(Exception):
    """Base class for all errors raised by this package."""


class NotSquareError(PsdApproxError):
    """Input matrix is not square."""


class NotHermitianError(PsdApproxError):
    """Input matrix violates the Hermitian tolerance."""


class DimensionMismatchError(PsdApproxError):
    """Operands have incompatible dimensions."""


class NotAPermutationError(PsdApproxError):
    """Vector is not a permutation of 0..n-1."""


class InfeasibleBoundsError(PsdApproxError):
    """max(diag_min[i], pivot_min) exceeds min(diag_max[i], pivot_max)."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"infeasible bounds at index {index}")


class EpsilonWindowViolationError(PsdApproxError):
    """Neither bound pair clears the zero-pivot exclusion radius."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"epsilon window violated at index {index}")


class NonPositiveEpsilonError(PsdApproxError):
    """Zero-pivot exclusion radius is not positive."""


class NonNegativePivotBoundRequiredError(PsdApproxError):
    """Pivot selection requires a nonnegative pivot lower bound."""


class InfeasiblePivotError(PsdApproxError):
    """No feasible pivot value exists for the given bounds."""


class DegenerateCubicError(PsdApproxError):
    """Leading cubic coefficient is zero."""


class NumericalBreakdownError(PsdApproxError):
    """A computed factor entry is not finite."""


class SingularDecompositionError(PsdApproxError):
    """Decomposition has a zero pivot and cannot be solved with."""


class PreconditionViolatedError(PsdApproxError):
    """Closed-form error formulas do not apply to this decomposition."""


class NonPositiveLowerBoundError(PsdApproxError):
    """Condition bounds require a positive pivot lower bound."""


class NotPositiveDefiniteError(PsdApproxError):
    """Matrix is not positive definite."""


class NoConvergenceError(PsdApproxError):
    """Iterative eigensolver did not converge within the sweep limit."""


class InvalidRangeError(PsdApproxError):
    """Eigenvalue range does not straddle zero."""


class ParseError(PsdApproxError):
    """Matrix Market input could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
