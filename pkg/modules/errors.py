"""
Toolkit Exceptions

Every numerical failure the toolkit can report has its own class here.
Kernels raise these instead of returning sentinel values, and the CLI
catches LPDError at the top level.
"""


class LPDError(Exception):
    """Base class for all toolkit errors."""


class RefinementError(LPDError):
    """Adaptive quadrature did not reach tolerance within the allowed depth.

    Args:
        message (str): Human readable description.
        estimate (complex): Last estimate of the integral.
        error (float): Last error estimate.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class DomainError(LPDError):
    """Argument outside the domain where the operation is defined."""


class AmbiguityError(LPDError):
    """Boundary value requested on a contour without a side flag."""


class PoleError(LPDError):
    """Evaluation at a pole (Gamma argument, vanishing denominator)."""


class PrecisionError(LPDError):
    """Special function accuracy could not be certified."""


class StiffnessError(LPDError):
    """ODE step size collapsed."""


class SingularNormalizationError(LPDError):
    """Jost normalization undefined (xi = 0)."""


class InconsistentDataError(LPDError):
    """Two independent evaluations of the same quantity disagree."""


class UnsupportedDegeneracyError(LPDError):
    """Both a2(0) and its derivative vanish."""


class BranchError(LPDError):
    """Logarithm requested on a non-positive or winding argument."""


class AssumptionViolationError(LPDError):
    """An analytic hypothesis (for example |arg(1+r1 r2)| < pi) fails."""


class RegimeError(LPDError):
    """Ray slope or saddle geometry outside the supported regime."""


class DegenerateBPError(LPDError):
    """Blaschke-Potapov denominator vanishes."""


class NonSimpleZeroError(LPDError):
    """The zero of a1 at i*xi1 is not simple."""


class SingularPointError(LPDError):
    """Evaluation on the pole locus of an exact solution.

    Args:
        message (str): Human readable description.
        location (tuple): (x, t) of the pole.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class StabilityError(LPDError):
    """Time step violates the explicit stability bound."""


class BlowUpError(LPDError):
    """Non-finite values appeared in the simulated field."""


class SchemaError(LPDError):
    """Configuration document failed validation."""


class TableGapError(LPDError):
    """Sign pattern of Im v not covered by the error-order tables.

    Args:
        message (str): Human readable description.
        pattern (tuple): The (-1)^j Im v_j signs that were looked up.
    """

    def __init__(self, message, pattern=None):
        super().__init__(message)
        self.pattern = pattern
