"""Shared generators for the test suite.

Two families of helpers:

* plain-rng generators (``random_*``) used by the timed acceptance tests,
  where hypothesis' bookkeeping would dominate the runtime budget, and
* hypothesis strategies (``st_*``) used by the per-module property tests.

All generated coefficients are small integers or halves, so conversion to
the exact Gaussian-rational layer is lossless and "exact" assertions mean
what they say.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from nullsl2 import (
    C3NullCurve,
    MeroFunction,
    SL2NullCurve,
    SpinorData,
    annulus,
    from_spinor,
    integrate_null,
    tee_curve,
)

# ---------------------------------------------------------------------------
# plain-rng generators (fast path for the acceptance suite)
# ---------------------------------------------------------------------------


def random_int_coeffs(rng: np.random.Generator, max_deg: int = 3,
                      lo: int = -4, hi: int = 5,
                      nonzero: bool = False) -> tuple:
    """Ascending coefficients with small Gaussian-integer entries."""
    deg = int(rng.integers(0, max_deg + 1))
    while True:
        re = rng.integers(lo, hi, size=deg + 1)
        im = rng.integers(lo, hi, size=deg + 1)
        coeffs = tuple(complex(int(a), int(b)) for a, b in zip(re, im))
        if not nonzero or any(c != 0 for c in coeffs):
            return coeffs


def random_rational(rng: np.random.Generator, max_deg: int = 3) -> MeroFunction:
    num = random_int_coeffs(rng, max_deg)
    den = random_int_coeffs(rng, max_deg=2, nonzero=True)
    return MeroFunction.from_rational(num, den)


def random_spinor(rng: np.random.Generator) -> SpinorData:
    """Random rational spinor data (eta != 0)."""
    eta = MeroFunction.from_rational(
        random_int_coeffs(rng, nonzero=True),
        random_int_coeffs(rng, max_deg=2, nonzero=True))
    f3 = MeroFunction.from_rational(
        random_int_coeffs(rng),
        random_int_coeffs(rng, max_deg=2, nonzero=True))
    return SpinorData(eta, f3, conjugate_chart=bool(rng.integers(0, 2)))


def random_window_spinor(rng: np.random.Generator) -> SpinorData:
    """Spinor data in the floating Laurent-window representation.

    eta must be zero-free on the closed annulus -- otherwise q = f3^2/eta
    has a pole inside it and no Laurent expansion exists.  We take
    eta = z^k (c0 + c1 z^s) with |c1| <= 0.15 |c0|, which pins eta's one
    finite zero at modulus >= 1/0.15 (s = +1) or <= 0.15 (s = -1), well
    clear of [0.5, 2].
    """
    dom = annulus(0.5, 2.0)
    k = int(rng.integers(-2, 2))
    c0 = complex(*rng.normal(size=2))
    c0 += c0 / abs(c0) if abs(c0) > 1e-6 else 1.0
    c1 = 0.15 * abs(c0) * rng.uniform(0, 1) * np.exp(2j * np.pi * rng.uniform())
    if rng.integers(0, 2):
        eta = MeroFunction.from_laurent(k, [c0, c1], domain=dom)
    else:
        eta = MeroFunction.from_laurent(k - 1, [c1, c0], domain=dom)
    f3_coeffs = [complex(a, b) for a, b in
                 rng.normal(size=(int(rng.integers(1, 4)), 2))]
    f3 = MeroFunction.from_laurent(int(rng.integers(-1, 2)), f3_coeffs,
                                   domain=dom)
    return SpinorData(eta, f3)


def random_integrable_spinor(rng: np.random.Generator) -> SpinorData:
    """Spinor data whose direction field is a polynomial vector.

    With eta = c * z^(2a) and f3 = z^a * p(z), the quotient f3^2/eta is the
    polynomial p^2/c, so every component of the direction field is
    polynomial and integrates exactly with no residues anywhere.
    """
    a = int(rng.integers(0, 2))
    c = complex(int(rng.integers(1, 4)), int(rng.integers(0, 3)))
    eta = MeroFunction.monomial(2 * a, c)
    p = random_int_coeffs(rng, max_deg=2, nonzero=True)
    f3 = MeroFunction.monomial(a) * MeroFunction.from_poly(p)
    return SpinorData(eta, f3)


def random_c3_curve(rng: np.random.Generator) -> C3NullCurve:
    return integrate_null(from_spinor(random_integrable_spinor(rng)))


def random_sl2_curve(rng: np.random.Generator) -> SL2NullCurve:
    """A spinor-generated SL2 null curve (X3 != 0 by construction)."""
    while True:
        X = random_c3_curve(rng)
        if not X.X3.is_identically_zero():
            return tee_curve(X)


# ---------------------------------------------------------------------------
# hypothesis strategies
# ---------------------------------------------------------------------------

_small_int = st.integers(min_value=-4, max_value=4)
_small_exact = st.builds(
    lambda a, b: complex(Fraction(a, 2), Fraction(b, 2)),
    _small_int, _small_int)


def st_coeffs(min_size=1, max_size=4, nonzero=False):
    base = st.lists(_small_exact, min_size=min_size, max_size=max_size)
    if nonzero:
        base = base.filter(lambda cs: any(c != 0 for c in cs))
    return base


@st.composite
def st_rational(draw, max_num=4, max_den=3):
    num = draw(st_coeffs(max_size=max_num))
    den = draw(st_coeffs(max_size=max_den, nonzero=True))
    return MeroFunction.from_rational(num, den)


@st.composite
def st_nonzero_rational(draw):
    f = draw(st_rational())
    if f.is_identically_zero():
        f = f + 1
    return f


@st.composite
def st_spinor(draw):
    eta = draw(st_nonzero_rational())
    f3 = draw(st_rational())
    chart = draw(st.booleans())
    return SpinorData(eta, f3, conjugate_chart=chart)


@st.composite
def st_window(draw):
    min_exp = draw(st.integers(min_value=-3, max_value=1))
    coeffs = draw(st.lists(
        st.complex_numbers(max_magnitude=4, allow_nan=False,
                           allow_infinity=False),
        min_size=1, max_size=5))
    return MeroFunction.from_laurent(min_exp, coeffs, domain=annulus(0.5, 2.0))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260817)
