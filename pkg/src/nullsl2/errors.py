"""Exception hierarchy shared by every module in the package.

All domain failures derive from :class:`NullCurveError` so callers (and the
CLI) can distinguish "the mathematics said no" (exit 1) from malformed input
(:class:`ParseError`, exit 2).
"""

from __future__ import annotations


class NullCurveError(Exception):
    """Base class for every domain error raised by this package."""


# ---------------------------------------------------------------------------
# series layer
# ---------------------------------------------------------------------------

class IdenticallyZero(NullCurveError):
    """An operation that needs a nonzero function received the zero function."""


class TruncationTooShort(NullCurveError):
    """A Laurent window is too short to certify the requested quantity."""


class DivisionByZeroFunction(NullCurveError):
    """Division by a function that is identically zero."""


class EvaluationAtPole(NullCurveError):
    """Pointwise evaluation was requested at a genuine pole."""


# ---------------------------------------------------------------------------
# spinor / integration layer
# ---------------------------------------------------------------------------

class EtaIdenticallyZero(NullCurveError):
    """Spinor data requires eta != 0 as a function."""


class DegenerateEta(NullCurveError):
    """f1 + i*f2 vanishes identically, so this spinor chart is unusable."""


class NonExactField(NullCurveError):
    """The direction field has a nonvanishing period, so no single-valued
    antiderivative exists on the requested domain.

    Attributes
    ----------
    cycle : the offending cycle (a ``periods.Cycle``) when known.
    period : complex period value on that cycle.
    """

    def __init__(self, message: str, cycle=None, period=None):
        super().__init__(message)
        self.cycle = cycle
        self.period = period


# ---------------------------------------------------------------------------
# SL2 curve layer
# ---------------------------------------------------------------------------

class ThirdCoordinateZero(NullCurveError):
    """The pointwise transform to SL2 needs z3 != 0 at the point."""


class FirstEntryZero(NullCurveError):
    """The pointwise inverse transform needs the (1,1) entry != 0."""


class InvalidMultiplicity(NullCurveError):
    """End models exist only for integer multiplicities m >= 1."""


class SearchFailed(NullCurveError):
    """The shear-parameter search exhausted its budget.

    Carries ``best_lambda``, the best candidate found, for diagnostics.
    """

    def __init__(self, message: str, best_lambda=None):
        super().__init__(message)
        self.best_lambda = best_lambda


class PoleOnContour(NullCurveError):
    """A quadrature contour or sample circle passes through a pole."""


# ---------------------------------------------------------------------------
# invariants layer
# ---------------------------------------------------------------------------

class DegenerateDenominator(NullCurveError):
    """Both quotients defining a Gauss map (or the Hopf denominator) vanish."""


class GaussMapMismatch(NullCurveError):
    """The two quotient formulas for a Gauss map disagree (input not null)."""


class HopfMismatch(NullCurveError):
    """The two computation paths for the Hopf differential disagree."""


class NotAnEnd(NullCurveError):
    """The curve extends holomorphically at the point; there is no end there."""


class UmbilicInput(NullCurveError):
    """The Hopf differential vanishes identically; end exponents are undefined."""


class HypothesisViolation(NullCurveError):
    """A hypothesis of the end-classification lemma fails at the point."""


# ---------------------------------------------------------------------------
# spaceforms layer
# ---------------------------------------------------------------------------

class NotUnimodular(NullCurveError):
    """A matrix expected in SL(2,C) has det != 1 beyond tolerance."""


class NotHermitian(NullCurveError):
    """A matrix expected Hermitian is not, beyond tolerance."""


# ---------------------------------------------------------------------------
# periods layer
# ---------------------------------------------------------------------------

class CrossCheckFailed(NullCurveError):
    """Quadrature and the residue theorem disagree beyond tolerance."""


class SingularJacobian(NullCurveError):
    """The period Jacobian is effectively singular at the current iterate."""


class MaxIterExceeded(NullCurveError):
    """Newton did not reach the tolerance within max_iter iterations.

    Carries the best iterate (``zeta``), its ``report`` and the
    ``residual_history`` so callers can still use the partial result.
    """

    def __init__(self, message: str, zeta=None, report=None, residual_history=()):
        super().__init__(message)
        self.zeta = zeta
        self.report = report
        self.residual_history = tuple(residual_history)


# ---------------------------------------------------------------------------
# CLI layer
# ---------------------------------------------------------------------------

class ParseError(NullCurveError):
    """Malformed JSON input, unknown schema, or invalid option value."""


class ValidationFailed(NullCurveError):
    """A required predicate of `nullsl2 validate` is false."""


class PoleOnGrid(NullCurveError):
    """A declared pole lies inside the requested mesh annulus."""
