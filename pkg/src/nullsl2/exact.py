"""Exact complex-rational arithmetic: scalars and dense polynomials.

This layer is what turns identity checks (det == 1, sums of squares == 0,
vanishing Wronskians) into genuine yes/no answers instead of "small residual".
Scalars are Gaussian rationals -- real and imaginary parts are
:class:`fractions.Fraction` -- and Python floats convert *exactly* (every
float is dyadic), so data that round-trips through JSON floats stays exact.

Only what the package needs is implemented: ring/field operations, Horner
evaluation in both exact and floating flavours, Taylor shift, root
multiplicity by synthetic division, Euclidean division / gcd, and a small
exact Gaussian elimination used by the rational-antiderivative reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact: floats are dyadic rationals
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


class ExactComplex:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    # -- construction ------------------------------------------------------

    @staticmethod
    def of(value) -> "ExactComplex":
        """Coerce ints, floats, Fractions, complex and ExactComplex."""
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return ExactComplex(value.real, value.imag)
        return ExactComplex(value)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = other if isinstance(other, ExactComplex) else ExactComplex.of(other)
        # raw integer cross-multiplication with a single normalizing
        # Fraction() per component is several times cheaper than chaining
        # Fraction operators (each of which re-dispatches and re-reduces)
        ar, ai, br, bi = self.re, self.im, o.re, o.im
        if not ar and not ai:
            return o
        if not br and not bi:
            return self
        d1, d2 = ar.denominator, br.denominator
        e1, e2 = ai.denominator, bi.denominator
        return ExactComplex(
            Fraction(ar.numerator * d2 + br.numerator * d1, d1 * d2),
            Fraction(ai.numerator * e2 + bi.numerator * e1, e1 * e2))

    __radd__ = __add__

    def __sub__(self, other):
        o = other if isinstance(other, ExactComplex) else ExactComplex.of(other)
        ar, ai, br, bi = self.re, self.im, o.re, o.im
        d1, d2 = ar.denominator, br.denominator
        e1, e2 = ai.denominator, bi.denominator
        return ExactComplex(
            Fraction(ar.numerator * d2 - br.numerator * d1, d1 * d2),
            Fraction(ai.numerator * e2 - bi.numerator * e1, e1 * e2))

    def __rsub__(self, other):
        return ExactComplex.of(other).__sub__(self)

    def __mul__(self, other):
        o = other if isinstance(other, ExactComplex) else ExactComplex.of(other)
        ar, ai, br, bi = self.re, self.im, o.re, o.im
        arn, ard = ar.numerator, ar.denominator
        ain, aid = ai.numerator, ai.denominator
        brn, brd = br.numerator, br.denominator
        bin_, bid = bi.numerator, bi.denominator
        if not ain and not bin_:        # real * real, the most common case
            return ExactComplex(Fraction(arn * brn, ard * brd), _ZERO)
        # re = ar br - ai bi, im = ar bi + ai br, over the common denominator
        den = ard * brd * aid * bid
        re_n = arn * brn * aid * bid - ain * bin_ * ard * brd
        im_n = arn * bin_ * aid * brd + ain * brn * ard * bid
        return ExactComplex(Fraction(re_n, den), Fraction(im_n, den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ExactComplex.of(other)
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("exact complex division by zero")
        return ExactComplex((self.re * o.re + self.im * o.im) / d,
                            (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return ExactComplex.of(other).__truediv__(self)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        try:
            o = ExactComplex.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- conversion ---------------------------------------------------------

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"ExactComplex({self.re!r}, {self.im!r})"


EC_ZERO = ExactComplex(0)
EC_ONE = ExactComplex(1)
EC_I = ExactComplex(0, 1)


def _as_coeff_tuple(coeffs: Iterable) -> tuple[ExactComplex, ...]:
    out = [ExactComplex.of(c) for c in coeffs]
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


def _int_coeffs(coeffs) -> tuple[int, list[int], list[int]]:
    """Common denominator d plus integer numerator lists (re, im) so that
    coeff[k] == (re[k] + i*im[k]) / d."""
    den = 1
    for c in coeffs:
        den = lcm(den, c.re.denominator, c.im.denominator)
    re = [c.re.numerator * (den // c.re.denominator) for c in coeffs]
    im = [c.im.numerator * (den // c.im.denominator) for c in coeffs]
    return den, re, im


class Poly:
    """Dense univariate polynomial, ascending exact-complex coefficients.

    The zero polynomial is the empty tuple; trailing zero coefficients are
    trimmed on construction, so ``degree`` is well defined.
    """

    __slots__ = ("coeffs", "_float_cache")

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _as_coeff_tuple(coeffs))
        object.__setattr__(self, "_float_cache", None)

    def __setattr__(self, name, value):  # immutable by convention
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((EC_ONE,))

    @staticmethod
    def monomial(k: int, c=1) -> "Poly":
        if k < 0:
            raise ValueError("monomial exponent must be >= 0")
        return Poly((EC_ZERO,) * k + (ExactComplex.of(c),))

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> ExactComplex:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> ExactComplex:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return EC_ZERO

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        # Convolving Fraction pairs coefficient-by-coefficient reduces on
        # every partial product.  Scaling both factors to one integer
        # denominator first keeps the whole convolution in (fast) integer
        # arithmetic and pays for exactly one reduction per output
        # coefficient.
        da, a_re, a_im = _int_coeffs(self.coeffs)
        db, b_re, b_im = _int_coeffs(other.coeffs)
        n, m = len(a_re), len(b_re)
        out_re = [0] * (n + m - 1)
        out_im = [0] * (n + m - 1)
        if any(a_im) or any(b_im):
            for i in range(n):
                ar, ai = a_re[i], a_im[i]
                if not ar and not ai:
                    continue
                for j in range(m):
                    out_re[i + j] += ar * b_re[j] - ai * b_im[j]
                    out_im[i + j] += ar * b_im[j] + ai * b_re[j]
        else:
            for i in range(n):
                ar = a_re[i]
                if not ar:
                    continue
                for j in range(m):
                    out_re[i + j] += ar * b_re[j]
        den = da * db
        return Poly(tuple(
            ExactComplex(Fraction(re, den), Fraction(im, den))
            for re, im in zip(out_re, out_im)))

    def scale(self, c) -> "Poly":
        c = ExactComplex.of(c)
        if c.is_zero():
            return Poly.zero()
        return Poly(tuple(a * c for a in self.coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[complex(c) for c in self.coeffs]})"

    # -- evaluation ------------------------------------------------------------

    def __call__(self, z):
        """Horner evaluation; exact for ExactComplex input, float otherwise."""
        if isinstance(z, ExactComplex):
            acc = EC_ZERO
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        zc = complex(z)
        acc = 0j
        for c in self.float_coeffs():
            acc = acc * zc + c
        return acc

    def float_coeffs(self) -> tuple[complex, ...]:
        """Descending float coefficients (numpy/Horner order), cached."""
        cached = self._float_cache
        if cached is None:
            cached = tuple(complex(c) for c in reversed(self.coeffs))
            object.__setattr__(self, "_float_cache", cached)
        return cached

    # -- calculus ---------------------------------------------------------------

    def derivative(self) -> "Poly":
        return Poly(tuple(c * k for k, c in enumerate(self.coeffs) if k >= 1))

    # -- shifts, roots, division --------------------------------------------------

    def shift(self, p) -> "Poly":
        """Coefficients of self(w + p) in w (exact Taylor shift)."""
        p = ExactComplex.of(p)
        if p.is_zero() or self.is_zero():
            return self
        # repeated synthetic division by (w - 0) after substituting z = w + p:
        # classic remainder-collection algorithm, O(n^2) exact operations.
        work = list(self.coeffs)
        n = len(work)
        out = []
        for i in range(n):
            # synthetic division of `work` by (z - p): remainder -> coefficient i
            for j in range(n - 2 - i, -1, -1):
                work[j] = work[j] + p * work[j + 1]
            out.append(work[0])
            work = work[1:]
        return Poly(out)

    def low_order(self) -> int:
        """Index of the first nonzero coefficient (valuation at 0)."""
        if self.is_zero():
            raise ValueError("zero polynomial has no valuation")
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        raise AssertionError("unreachable: trailing zeros are trimmed")

    def multiplicity_at(self, p) -> int:
        """Multiplicity of p as a root (0 when p is not a root). Exact."""
        if self.is_zero():
            raise ValueError("every point is a root of the zero polynomial")
        p = ExactComplex.of(p)
        if p.is_zero():
            return self.low_order()
        count = 0
        cur = self
        while not cur.is_zero() and cur(p).is_zero():
            cur = cur.deflate(p)
            count += 1
        return count

    def deflate(self, p) -> "Poly":
        """Exact synthetic division by (z - p); requires self(p) == 0."""
        p = ExactComplex.of(p)
        out = [EC_ZERO] * (len(self.coeffs) - 1)
        acc = EC_ZERO
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * p + self.coeffs[k]
            out[k - 1] = acc
        return Poly(out)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact Euclidean division: self = q*other + r, deg r < deg other."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), self
        quot = [EC_ZERO] * (dq + 1)
        inv_lc = EC_ONE / other.lc
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lc
            quot[k] = c
            if not c.is_zero():
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quot), Poly(rem[:len(other.coeffs) - 1])

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(EC_ONE / self.lc)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the exact complex-rational field (Euclid)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def solve_linear(rows: Sequence[Sequence[ExactComplex]],
                 rhs: Sequence[ExactComplex]) -> list[ExactComplex] | None:
    """Solve a square exact linear system by Gaussian elimination.

    Returns None when the matrix is singular (the callers treat that as
    "decomposition does not exist", which for our uses cannot happen and is
    reported upstream as an internal inconsistency).
    """
    n = len(rows)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if not aug[i][c].is_zero()), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = EC_ONE / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    if r < n:
        return None
    return [aug[i][n] for i in range(n)]
