"""Exception hierarchy.

``InputError`` subclasses describe bad arguments (CLI exit code 1);
``NumericalError`` subclasses describe failures of the numerics on
well-formed input (exit code 2).
"""


class NevpickError(Exception):
    pass


class InputError(NevpickError, ValueError):
    """Malformed or out-of-contract input. ``field`` points at the offending item."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class NumericalError(NevpickError, ArithmeticError):
    pass


class ZeroPolynomial(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class OutOfDisc(InputError):
    pass


class CoincidentPoints(InputError):
    pass


class SpectrumNotInDisc(InputError):
    pass


class DomainViolation(InputError):
    pass


class NotUnitary(InputError):
    pass


class NotAnEigenvalue(InputError):
    pass


class InsufficientDerivatives(InputError):
    pass


class PoleOnSpectrum(NumericalError):
    pass


class PoleHit(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class EmptyPreimage(NumericalError):
    """Spectral-mapping bookkeeping found no eigenvalue over an image point."""


class AssertionReport(NevpickError, AssertionError):
    """Raised by the verification harnesses; carries the full report."""

    def __init__(self, report):
        bad = getattr(report, "violations", None)
        if bad is None:
            bad = getattr(report, "failures", None)
        if bad is not None:
            msg = f"{len(bad)} violation(s)"
        else:
            msg = f"check failed: max error {getattr(report, 'max_error', float('nan')):.3e}"
        super().__init__(msg)
        self.report = report
