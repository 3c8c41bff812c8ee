"""Exception types raised by the numerical routines."""


class BsDerivError(Exception):
    """Base class for all package errors."""


class NumericalFailure(BsDerivError):
    """A computation on valid input did not reach its accuracy target."""


class NonConvergence(NumericalFailure):
    """A series or iteration exhausted its budget before reaching tolerance."""


class PoleInNormalization(BsDerivError):
    """A gamma normalization factor sits on a pole for the requested order."""


class InsufficientZerosFound(NumericalFailure):
    """The zero scan hit its ceiling before collecting the requested count."""


class NoSignChange(NumericalFailure):
    """A bracket handed to the refiner does not straddle a sign change."""


class TableMismatch(BsDerivError):
    """Two zero tables cannot be compared (family, order or n disagree)."""


class RangeExceeded(BsDerivError):
    """The evaluation point lies outside the range covered by a zero table."""


class PoleAtInput(BsDerivError):
    """The evaluation point coincides with a pole of the expansion."""


class IntervalStraddlesZero(BsDerivError):
    """A monotonicity interval contains a tabulated zero."""


class OutOfTheoremRange(BsDerivError):
    """Parameters fall outside the range where a closed form is valid."""


class NotNormalized(BsDerivError):
    """Series coefficients do not start with a unit constant term."""


class DegenerateLeadingCoefficient(BsDerivError):
    """The polynomial leading coefficient is (numerically) zero."""


class BoundaryZeroUnresolvable(NumericalFailure):
    """A zero stays on the counting contour after every nudge."""


class QuadratureNonConvergence(NumericalFailure):
    """The winding-number quadrature never settled on an integer."""


class CountingInconsistency(NumericalFailure):
    """Complex-zero bookkeeping produced an impossible (odd) count."""
