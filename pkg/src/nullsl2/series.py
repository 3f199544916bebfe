"""Meromorphic functions of one complex variable, in two representations.

``Rational``
    An exact quotient of polynomials with complex-rational coefficients
    (see :mod:`nullsl2.exact`).  Identity checks on this representation are
    genuine algebraic facts: ``det F - 1 == 0`` means *equal*, not "small".

``LaurentWindow``
    A finite floating window of Laurent coefficients around ``base_point``:
    exponents run from ``min_exponent`` to ``truncation_order``.  Coefficients
    below ``min_exponent`` are known to vanish; coefficients above
    ``truncation_order`` are unknown.  Arithmetic tracks the certified range
    (sum: min of tops; product: ``min(T1+n2, T2+n1)``; etc.), so a window
    never claims digits it cannot certify.

Every function carries a ``base_point`` and a ``DomainTag``.  Annulus-tagged
windows are genuine two-sided Laurent series: their division (and the
rational-to-window conversion) goes through FFT re-expansion on the
geometric-mean circle, because a germ expansion would produce the wrong
Laurent branch there.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZeroFunction,
    EvaluationAtPole,
    IdenticallyZero,
    NonExactField,
    TruncationTooShort,
)
from .exact import EC_ONE, EC_ZERO, ExactComplex, Poly, poly_gcd, solve_linear

#: zero tolerance for floating coefficient tests
ZERO_TOL = 1e-10
#: default number of certified window terms (leading exponent + 24 more)
DEFAULT_TERMS = 25
#: relative threshold below which computed leading coefficients are stripped
_STRIP_REL = 1e-13


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainTag:
    """Where a function is considered to live: disk, punctured disk,
    annulus(r_inner, r_outer) or the full plane."""

    kind: str
    r_inner: float | None = None
    r_outer: float | None = None

    def __post_init__(self):
        if self.kind not in ("disk", "punctured_disk", "annulus", "plane"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "annulus":
            if not (self.r_inner is not None and self.r_outer is not None
                    and 0 < self.r_inner < self.r_outer):
                raise ValueError("annulus needs 0 < r_inner < r_outer")

    @property
    def is_annulus(self) -> bool:
        return self.kind == "annulus"


def disk() -> DomainTag:
    return DomainTag("disk")


def punctured_disk() -> DomainTag:
    return DomainTag("punctured_disk")


def annulus(r_inner: float, r_outer: float) -> DomainTag:
    return DomainTag("annulus", float(r_inner), float(r_outer))


def plane() -> DomainTag:
    return DomainTag("plane")


def _merge_domain(a: DomainTag, b: DomainTag) -> DomainTag:
    if a.is_annulus and b.is_annulus:
        ri, ro = max(a.r_inner, b.r_inner), min(a.r_outer, b.r_outer)
        if not ri < ro:
            raise ValueError("annulus domains do not overlap")
        return annulus(ri, ro)
    if a.is_annulus:
        return a
    if b.is_annulus:
        return b
    order = {"punctured_disk": 0, "disk": 1, "plane": 2}
    return a if order[a.kind] <= order[b.kind] else b


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rational:
    """Exact quotient num/den of polynomials; den is not the zero polynomial."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise DivisionByZeroFunction("rational function with zero denominator")


@dataclass(frozen=True)
class LaurentWindow:
    """Floating Laurent coefficients for exponents
    ``min_exponent .. truncation_order`` (ascending).

    The leading coefficient is nonzero unless the window is identically zero
    over its certified range.
    """

    min_exponent: int
    coeffs: tuple[complex, ...]
    truncation_order: int

    def __post_init__(self):
        if self.truncation_order != self.min_exponent + len(self.coeffs) - 1:
            raise ValueError("truncation_order inconsistent with coefficient count")


def _normalized_window(min_exp: int, coeffs: Sequence[complex],
                       strip_rel: float = 0.0) -> LaurentWindow:
    cs = [complex(c) for c in coeffs]
    if not cs:
        return LaurentWindow(min_exp, (), min_exp - 1)
    peak = max(abs(c) for c in cs)
    thr = strip_rel * peak
    if thr > 0:
        # zero out sub-threshold entries everywhere, not only at the front:
        # FFT round-off junk at high exponents is amplified by r^k when the
        # window is evaluated near the annulus edges
        cs = [0j if abs(c) <= thr else c for c in cs]
    lead = 0
    if peak > 0:
        while lead < len(cs) - 1 and abs(cs[lead]) <= thr:
            lead += 1
        if abs(cs[lead]) <= thr:
            lead = 0  # all coefficients tiny: keep as an identically-zero window
    return LaurentWindow(min_exp + lead, tuple(cs[lead:]),
                         min_exp + len(cs) - 1)


# ---------------------------------------------------------------------------
# the public function type
# ---------------------------------------------------------------------------

class MeroFunction:
    """A meromorphic function in either exact-rational or window form."""

    __slots__ = ("rep", "base_point", "domain")

    def __init__(self, rep, base_point: complex = 0j,
                 domain: DomainTag | None = None):
        if not isinstance(rep, (Rational, LaurentWindow)):
            raise TypeError("rep must be Rational or LaurentWindow")
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "base_point", complex(base_point))
        if domain is None:
            if isinstance(rep, Rational):
                domain = plane()
            else:
                domain = punctured_disk() if rep.min_exponent < 0 else disk()
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("MeroFunction is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(num: Iterable, den: Iterable = (1,),
                      base_point: complex = 0j,
                      domain: DomainTag | None = None) -> "MeroFunction":
        """Build from ascending coefficient lists (exact; floats stay exact)."""
        n = num if isinstance(num, Poly) else Poly(num)
        d = den if isinstance(den, Poly) else Poly(den)
        n, d = _cancel_monomial(n, d)
        return MeroFunction(Rational(n, d), base_point, domain)

    @staticmethod
    def from_poly(coeffs: Iterable, base_point: complex = 0j,
                  domain: DomainTag | None = None) -> "MeroFunction":
        return MeroFunction.from_rational(coeffs, (1,), base_point, domain)

    @staticmethod
    def from_laurent(min_exponent: int, coeffs: Iterable,
                     base_point: complex = 0j,
                     domain: DomainTag | None = None) -> "MeroFunction":
        win = _normalized_window(int(min_exponent), list(coeffs))
        return MeroFunction(win, base_point, domain)

    @staticmethod
    def constant(c, base_point: complex = 0j,
                 domain: DomainTag | None = None) -> "MeroFunction":
        return MeroFunction.from_rational((c,), (1,), base_point, domain)

    @staticmethod
    def zero(base_point: complex = 0j) -> "MeroFunction":
        return MeroFunction.from_rational((), (1,), base_point)

    @staticmethod
    def monomial(exponent: int, c=1, base_point: complex = 0j,
                 domain: DomainTag | None = None) -> "MeroFunction":
        """c * (z - base_point)**exponent, exact for any integer exponent."""
        if exponent >= 0:
            num, den = Poly.monomial(exponent, c), Poly.one()
        else:
            num, den = Poly((c,)), Poly.monomial(-exponent)
        if base_point != 0:
            num, den = num.shift(ExactComplex.of(-base_point)), \
                den.shift(ExactComplex.of(-base_point))
        return MeroFunction(Rational(num, den), base_point, domain)

    # -- representation queries -----------------------------------------------

    @property
    def is_rational(self) -> bool:
        return isinstance(self.rep, Rational)

    @property
    def is_window(self) -> bool:
        return isinstance(self.rep, LaurentWindow)

    def with_domain(self, domain: DomainTag) -> "MeroFunction":
        return MeroFunction(self.rep, self.base_point, domain)

    def is_identically_zero(self, tol: float = ZERO_TOL) -> bool:
        """Exact zero test for exact data; for float-contaminated data the
        numerator is compared against `tol` relative to the denominator
        scale, so round-tripped coefficients keep their verdicts."""
        if self.is_rational:
            if self.rep.num.is_zero():
                return True
            nmax = max(abs(complex(c)) for c in self.rep.num.coeffs)
            dmax = max(abs(complex(c)) for c in self.rep.den.coeffs)
            return nmax <= tol * max(1.0, dmax)
        return all(abs(c) <= tol for c in self.rep.coeffs)

    def __repr__(self) -> str:
        if self.is_rational:
            return (f"MeroFunction(num={[complex(c) for c in self.rep.num.coeffs]}, "
                    f"den={[complex(c) for c in self.rep.den.coeffs]})")
        w = self.rep
        return (f"MeroFunction(window [{w.min_exponent}..{w.truncation_order}] "
                f"at {self.base_point})")

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "MeroFunction":
        if isinstance(other, MeroFunction):
            return other
        return MeroFunction.constant(other, self.base_point, self.domain)

    def __add__(self, other):
        return _binary("add", self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return _binary("sub", self, self._coerce(other))

    def __rsub__(self, other):
        return _binary("sub", self._coerce(other), self)

    def __mul__(self, other):
        return _binary("mul", self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return _binary("div", self, self._coerce(other))

    def __rtruediv__(self, other):
        return _binary("div", self._coerce(other), self)

    def __neg__(self):
        if self.is_rational:
            return MeroFunction(Rational(-self.rep.num, self.rep.den),
                                self.base_point, self.domain)
        w = self.rep
        return MeroFunction(LaurentWindow(w.min_exponent,
                                          tuple(-c for c in w.coeffs),
                                          w.truncation_order),
                            self.base_point, self.domain)

    # -- calculus ----------------------------------------------------------------

    def differentiate(self) -> "MeroFunction":
        if self.is_rational:
            n, d = self.rep.num, self.rep.den
            if d.degree == 0:
                return MeroFunction(Rational(n.derivative(), d),
                                    self.base_point, self.domain)
            num = n.derivative() * d - n * d.derivative()
            num, den = _cancel_monomial(num, d * d)
            return MeroFunction(Rational(num, den), self.base_point, self.domain)
        w = self.rep
        coeffs = [(w.min_exponent + i) * c for i, c in enumerate(w.coeffs)]
        return MeroFunction(_normalized_window(w.min_exponent - 1, coeffs),
                            self.base_point, self.domain)

    def antiderivative(self) -> "MeroFunction":
        """Termwise/exact antiderivative with zero integration constant.

        Raises NonExactField when the function has a nonzero residue, i.e.
        when no single-valued antiderivative exists; the error carries the
        offending pole (``.pole``) and the cycle period (``.period``).
        """
        if self.is_rational:
            num, den = _rational_antiderivative(self.rep.num, self.rep.den)
            return MeroFunction(Rational(num, den), self.base_point, self.domain)
        w = self.rep
        res = _window_coeff(w, -1)
        if res is not None and abs(res) > ZERO_TOL:
            err = NonExactField(
                "window has a nonzero z^-1 coefficient; periods do not vanish",
                period=2j * cmath.pi * res)
            err.pole = self.base_point
            raise err
        coeffs = []
        for j in range(w.min_exponent + 1, w.truncation_order + 2):
            if j == 0:
                coeffs.append(0j)
            else:
                c = _window_coeff(w, j - 1)
                coeffs.append((c or 0j) / j)
        return MeroFunction(_normalized_window(w.min_exponent + 1, coeffs),
                            self.base_point, self.domain)

    # -- order / residue / evaluation ----------------------------------------------

    def ord(self, p: complex) -> int:
        """Vanishing order at p: the unique n with (z-p)^-n * f regular and
        nonzero at p. Exact for Rational; certified-by-window otherwise."""
        if self.is_rational:
            num, den = self.rep.num, self.rep.den
            if num.is_zero():
                raise IdenticallyZero("ord of the zero function is undefined")
            pe = ExactComplex.of(complex(p))
            return num.multiplicity_at(pe) - den.multiplicity_at(pe)
        w = self.rep
        if not w.coeffs:
            raise TruncationTooShort(
                "empty window cannot certify a vanishing order")
        if abs(complex(p) - self.base_point) <= 1e-12:
            for i, c in enumerate(w.coeffs):
                if abs(c) > ZERO_TOL:
                    return w.min_exponent + i
            raise TruncationTooShort(
                "all window coefficients are below tolerance; "
                "the order (if any) exceeds the truncation order")
        val = self.evaluate(p)
        if abs(val) > ZERO_TOL:
            return 0
        raise TruncationTooShort(
            "a window certifies orders only at its base point")

    def residue(self, p: complex) -> complex:
        """Coefficient of (z-p)^-1; exact (then floated) for Rational."""
        if self.is_rational:
            if self.rep.num.is_zero():
                return 0j
            pe = ExactComplex.of(complex(p))
            ns = self.rep.num.shift(pe)
            ds = self.rep.den.shift(pe)
            a = ns.low_order()
            b = ds.low_order()
            if a - b >= 0:
                return 0j
            _, coeffs = _exact_series_quotient(ns, ds, b - a)
            return complex(coeffs[b - a - 1])
        w = self.rep
        if abs(complex(p) - self.base_point) <= 1e-12:
            c = _window_coeff(w, -1)
            if c is not None:
                return c
            if w.truncation_order < -1 and w.coeffs:
                raise TruncationTooShort(
                    "window ends below exponent -1; residue not certified")
            return 0j
        return 0j  # windows are regular away from their base point

    def evaluate(self, z: complex) -> complex:
        """Pointwise value; removable singularities of Rational are filled
        exactly, genuine poles raise EvaluationAtPole."""
        if self.is_rational:
            return _evaluate_rational(self.rep, complex(z))
        w = self.rep
        dz = complex(z) - self.base_point
        if not w.coeffs:
            return 0j
        if dz == 0:
            if w.min_exponent < 0 and any(
                    abs(c) > ZERO_TOL
                    for c in w.coeffs[:max(0, -w.min_exponent)]):
                raise EvaluationAtPole("window has a pole at its base point")
            c0 = _window_coeff(w, 0)
            return c0 if c0 is not None else 0j
        acc = 0j
        for c in reversed(w.coeffs):
            acc = acc * dz + c
        return acc * dz ** w.min_exponent

    __call__ = evaluate

    def evaluate_many(self, zs) -> np.ndarray:
        """Vectorized evaluation on an array of sample points."""
        zs = np.asarray(zs, dtype=complex)
        if self.is_rational:
            nv = np.polyval(self.rep.num.float_coeffs() or (0j,), zs)
            dv = np.polyval(self.rep.den.float_coeffs(), zs)
            bad = dv == 0
            out = np.empty_like(zs)
            out[~bad] = nv[~bad] / dv[~bad]
            if bad.any():
                flat = out.reshape(-1)
                badf = bad.reshape(-1)
                zf = zs.reshape(-1)
                for i in np.nonzero(badf)[0]:
                    flat[i] = self.evaluate(zf[i])
            return out
        w = self.rep
        if not w.coeffs:
            return np.zeros_like(zs)
        dz = zs - self.base_point
        vals = np.polyval(tuple(reversed(w.coeffs)), dz)
        if w.min_exponent != 0:
            with np.errstate(divide="ignore", invalid="ignore"):
                vals = vals * dz ** float(w.min_exponent)
        zero = dz == 0
        if zero.any():
            flat = vals.reshape(-1)
            zf = zs.reshape(-1)
            for i in np.nonzero(zero.reshape(-1))[0]:
                flat[i] = self.evaluate(zf[i])
        return vals

    # -- conversions -----------------------------------------------------------------

    def exact_laurent(self, p: complex, count: int) -> tuple[int, list[ExactComplex]]:
        """Exact Laurent coefficients at p (Rational only): returns
        (min_exponent, first `count` coefficients from that exponent)."""
        if not self.is_rational:
            raise TypeError("exact_laurent requires the Rational representation")
        if self.rep.num.is_zero():
            raise IdenticallyZero("the zero function has no Laurent expansion")
        pe = ExactComplex.of(complex(p))
        ns = self.rep.num.shift(pe)
        ds = self.rep.den.shift(pe)
        return _exact_series_quotient(ns, ds, count)

    def to_laurent(self, base_point: complex | None = None,
                   terms: int = DEFAULT_TERMS,
                   domain: DomainTag | None = None) -> "MeroFunction":
        """Convert to a LaurentWindow (exact germ expansion, or FFT
        re-expansion on annulus domains)."""
        base = self.base_point if base_point is None else complex(base_point)
        dom = domain or self.domain
        if self.is_window:
            if abs(base - self.base_point) > 1e-12:
                raise ValueError("cannot move the base point of a window")
            return self.with_domain(dom)
        if dom.is_annulus:
            half = terms - 1
            win = _fft_expand(lambda zs: self.evaluate_many(zs), base, dom,
                              -half, half)
            return MeroFunction(win, base, dom)
        if self.rep.num.is_zero():
            return MeroFunction(_normalized_window(0, [0j] * terms), base, dom)
        lo, coeffs = self.exact_laurent(base, terms)
        win = _normalized_window(lo, [complex(c) for c in coeffs])
        if win.min_exponent < 0 and dom.kind == "disk":
            dom = punctured_disk()
        return MeroFunction(win, base, dom)

    def laurent_head(self, p: complex, lo: int, hi: int) -> dict[int, complex]:
        """Coefficients for exponents lo..hi at p (zero-filled below the
        window; TruncationTooShort beyond a window's certified top)."""
        if self.is_rational:
            if self.rep.num.is_zero():
                return {k: 0j for k in range(lo, hi + 1)}
            n, coeffs = self.exact_laurent(p, 1)
            if hi >= n:
                n, coeffs = self.exact_laurent(p, hi - n + 1)
            out = {}
            for k in range(lo, hi + 1):
                idx = k - n
                out[k] = complex(coeffs[idx]) if 0 <= idx < len(coeffs) else 0j
            return out
        w = self.rep
        if abs(complex(p) - self.base_point) > 1e-12:
            raise ValueError("window coefficients exist only at the base point")
        if hi > w.truncation_order and w.coeffs:
            raise TruncationTooShort(
                f"window certified through {w.truncation_order}, need {hi}")
        return {k: (_window_coeff(w, k) or 0j) for k in range(lo, hi + 1)}

    # -- pole / zero bookkeeping --------------------------------------------------------

    def poles(self) -> list[tuple[complex, int]]:
        """Numeric pole list [(location, order)], for bookkeeping."""
        if self.is_window:
            w = self.rep
            if w.min_exponent < 0 and any(abs(c) > ZERO_TOL for c in w.coeffs):
                k = self.ord(self.base_point)
                return [(self.base_point, -k)] if k < 0 else []
            return []
        num, den = self.rep.num, self.rep.den
        if den.degree < 1:
            return []
        out = []
        num_cl = _clustered_roots(num) if not num.is_zero() else []
        for p, md in _clustered_roots(den):
            mn = next((m for q, m in num_cl if abs(q - p) < 1e-8), 0)
            if num.is_zero():
                mn = md  # zero function: no genuine pole
            if md - mn > 0:
                out.append((p, md - mn))
        return out

    def zeros(self) -> list[tuple[complex, int]]:
        """Numeric zero list [(location, order)], for bookkeeping."""
        if self.is_window:
            return []
        num, den = self.rep.num, self.rep.den
        if num.is_zero() or num.degree < 1:
            return []
        out = []
        den_cl = _clustered_roots(den) if den.degree >= 1 else []
        for p, mn in _clustered_roots(num):
            md = next((m for q, m in den_cl if abs(q - p) < 1e-8), 0)
            if mn - md > 0:
                out.append((p, mn - md))
        return out


# ---------------------------------------------------------------------------
# the arith dispatcher (spec-facing entry point)
# ---------------------------------------------------------------------------

def arith(op: str, f: MeroFunction, g: MeroFunction) -> MeroFunction:
    """Pointwise arithmetic: op in {'add','sub','mul','div'}."""
    if op not in ("add", "sub", "mul", "div"):
        raise ValueError(f"unknown arithmetic op {op!r}")
    return _binary(op, f, g)


def differentiate(f: MeroFunction) -> MeroFunction:
    return f.differentiate()


def ord_at(f: MeroFunction, p: complex) -> int:
    return f.ord(p)


def residue(f: MeroFunction, p: complex) -> complex:
    return f.residue(p)


def evaluate(f: MeroFunction, z: complex) -> complex:
    return f.evaluate(z)


# ---------------------------------------------------------------------------
# rational helpers
# ---------------------------------------------------------------------------

def _cancel_monomial(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Cancel a common z^t factor (cheap exact reduction that keeps the
    monomial-denominator chains from growing)."""
    if num.is_zero() or den.is_zero():
        return num, den
    t = min(num.low_order(), den.low_order())
    if t == 0:
        return num, den
    return Poly(num.coeffs[t:]), Poly(den.coeffs[t:])


def _evaluate_rational(rep: Rational, z: complex) -> complex:
    dv = rep.den(z)
    if dv != 0 and abs(dv) > 1e-150:
        if rep.num.is_zero():
            return 0j
        return rep.num(z) / dv
    # exact fallback: decide removable vs genuine pole
    if rep.num.is_zero():
        return 0j
    ze = ExactComplex.of(z)
    md = rep.den.multiplicity_at(ze)
    if md == 0:
        dvE = rep.den(ze)
        return complex(rep.num(ze) / dvE)
    mn = rep.num.multiplicity_at(ze)
    if mn < md:
        raise EvaluationAtPole(f"pole of order {md - mn} at {z}")
    n, d = rep.num, rep.den
    for _ in range(md):
        n, d = n.deflate(ze), d.deflate(ze)
    return complex(n(ze) / d(ze))


def _exact_series_quotient(ns: Poly, ds: Poly, count: int
                           ) -> tuple[int, list[ExactComplex]]:
    """Laurent coefficients of ns/ds around 0: returns (min_exponent,
    coefficients). Both polynomials are already shifted to the point."""
    a = ns.low_order()
    b = ds.low_order()
    n_ser = list(ns.coeffs[a:])
    d_ser = list(ds.coeffs[b:])
    count = max(count, 1)
    inv = [EC_ONE / d_ser[0]]
    for k in range(1, count):
        s = EC_ZERO
        for j in range(1, min(k, len(d_ser) - 1) + 1):
            s = s + d_ser[j] * inv[k - j]
        inv.append(-s / d_ser[0])
    out = []
    for k in range(count):
        s = EC_ZERO
        for j in range(0, min(k, len(n_ser) - 1) + 1):
            s = s + n_ser[j] * inv[k - j]
        out.append(s)
    return a - b, out


def _rational_antiderivative(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Exact antiderivative of num/den as (num, den), or NonExactField.

    Reduction with undetermined coefficients (no factorization): write the
    proper part as (R/V)' + W/U with V = gcd(den, den'), U = den/V; a
    single-valued antiderivative exists iff the simple-pole part W vanishes.
    """
    q, r = num.divmod(den)
    q_int = Poly([EC_ZERO] + [c / (k + 1) for k, c in enumerate(q.coeffs)])
    if r.is_zero():
        return q_int, Poly.one()
    dmonic = den.monic()
    lead = den.lc
    r = r.scale(EC_ONE / lead)  # now integrating q_int + r/dmonic
    V = poly_gcd(dmonic, dmonic.derivative())
    U = dmonic.exact_div(V)
    u, v = U.degree, V.degree
    if v == 0:
        _raise_non_exact(r, U)
    T = (U * V.derivative()).exact_div(V)
    # unknowns: R (v coeffs), W (u coeffs); match coefficients of
    #   r = R'*U - T*R + W*V   (degree < u + v on both sides)
    size = u + v
    rows = [[EC_ZERO] * size for _ in range(size)]
    for i in range(v):  # column i: the basis monomial z^i of R
        rp = Poly.monomial(i - 1, i) if i >= 1 else Poly.zero()
        col_poly = rp * U - T * Poly.monomial(i)
        for k, c in enumerate(col_poly.coeffs):
            if k < size:
                rows[k][i] = rows[k][i] + c
    for j in range(u):  # W coefficient j -> column v + j
        col_poly = Poly.monomial(j) * V
        for k, c in enumerate(col_poly.coeffs):
            if k < size:
                rows[k][v + j] = rows[k][v + j] + c
    rhs = [r.coeff(k) for k in range(size)]
    sol = solve_linear(rows, rhs)
    if sol is None:
        raise AssertionError("antiderivative reduction system was singular")
    R = Poly(sol[:v])
    W = Poly(sol[v:])
    if not W.is_zero():
        _raise_non_exact(W, U)
    # antiderivative = q_int + R/V  ->  (q_int*V + R)/V
    return q_int * V + R, V


def _raise_non_exact(W: Poly, U: Poly):
    """Report the worst simple pole of W/U as a NonExactField error."""
    roots = _clustered_roots(U)
    du = U.derivative()
    best = None
    for p, _m in roots:
        res = W(p) / du(p)
        if best is None or abs(res) > abs(best[1]):
            best = (p, res)
    if best is None:  # degenerate: constant U cannot happen with v==0 guard
        raise AssertionError("non-exact part without poles")
    p, res = best
    err = NonExactField(
        f"nonvanishing residue {res} at pole {p}; "
        "the field has no single-valued antiderivative",
        period=2j * cmath.pi * res)
    err.pole = p
    raise err


def _clustered_roots(poly: Poly) -> list[tuple[complex, int]]:
    """Numeric roots clustered to multiplicity (bookkeeping grade)."""
    if poly.degree < 1:
        return []
    roots = sorted(np.roots(poly.float_coeffs()),
                   key=lambda r: (round(r.real, 6), round(r.imag, 6)))
    out: list[list] = []
    for r in roots:
        for entry in out:
            if abs(r - entry[0] / entry[1]) < 1e-6:
                entry[0] += r
                entry[1] += 1
                break
        else:
            out.append([r, 1])
    return [(complex(s / m), m) for s, m in out]


# ---------------------------------------------------------------------------
# window helpers
# ---------------------------------------------------------------------------

def _window_coeff(w: LaurentWindow, k: int) -> complex | None:
    """Certified coefficient at exponent k: complex, or 0 below the window,
    or None when k exceeds the certified top."""
    if k < w.min_exponent:
        return 0j
    if k > w.truncation_order:
        return None
    return w.coeffs[k - w.min_exponent]


def _as_window(f: MeroFunction, like: MeroFunction) -> LaurentWindow:
    if f.is_window:
        return f.rep
    terms = max(DEFAULT_TERMS, len(like.rep.coeffs)) if like.is_window \
        else DEFAULT_TERMS
    dom = _merge_domain(f.domain, like.domain)
    return f.to_laurent(like.base_point, terms, dom).rep


def _binary(op: str, f: MeroFunction, g: MeroFunction) -> MeroFunction:
    if f.is_rational and g.is_rational:
        return _binary_rational(op, f, g)
    # mixed or window/window
    base = f.base_point if f.is_window else g.base_point
    if f.is_window and g.is_window and \
            abs(f.base_point - g.base_point) > 1e-12:
        raise ValueError("window arithmetic needs matching base points")
    dom = _merge_domain(f.domain, g.domain)
    wf = _as_window(f, g if g.is_window else f)
    wg = _as_window(g, f if f.is_window else g)
    if op == "add":
        win = _window_add(wf, wg, 1)
    elif op == "sub":
        win = _window_add(wf, wg, -1)
    elif op == "mul":
        win = _window_mul(wf, wg)
    else:
        win = _window_div(wf, wg, base, dom)
    return MeroFunction(win, base, dom)


def _binary_rational(op: str, f: MeroFunction, g: MeroFunction) -> MeroFunction:
    a, b = f.rep, g.rep
    dom = _merge_domain(f.domain, g.domain)
    if op == "add":
        num, den = a.num * b.den + b.num * a.den, a.den * b.den
    elif op == "sub":
        num, den = a.num * b.den - b.num * a.den, a.den * b.den
    elif op == "mul":
        num, den = a.num * b.num, a.den * b.den
    else:
        if b.num.is_zero():
            raise DivisionByZeroFunction("division by the zero function")
        num, den = a.num * b.den, a.den * b.num
    num, den = _cancel_monomial(num, den)
    return MeroFunction(Rational(num, den), f.base_point, dom)


def _window_add(a: LaurentWindow, b: LaurentWindow, sign: int) -> LaurentWindow:
    # an empty window only arises from degenerate constructions; treat as zero
    if not a.coeffs and not b.coeffs:
        lo = min(a.min_exponent, b.min_exponent)
        return LaurentWindow(lo, (), lo - 1)
    if not a.coeffs:
        return _normalized_window(b.min_exponent,
                                  [sign * c for c in b.coeffs], _STRIP_REL)
    if not b.coeffs:
        return a
    lo = min(a.min_exponent, b.min_exponent)
    hi = min(a.truncation_order, b.truncation_order)
    out = []
    for k in range(lo, hi + 1):
        ca = _window_coeff(a, k) or 0j
        cb = _window_coeff(b, k) or 0j
        out.append(ca + sign * cb)
    return _normalized_window(lo, out, _STRIP_REL)


def _window_mul(a: LaurentWindow, b: LaurentWindow) -> LaurentWindow:
    if not a.coeffs or not b.coeffs:
        lo = a.min_exponent + b.min_exponent
        return LaurentWindow(lo, (), lo - 1)
    lo = a.min_exponent + b.min_exponent
    hi = min(a.truncation_order + b.min_exponent,
             b.truncation_order + a.min_exponent)
    full = np.convolve(np.asarray(a.coeffs), np.asarray(b.coeffs))
    keep = hi - lo + 1
    return _normalized_window(lo, list(full[:keep]), _STRIP_REL)


def _window_reciprocal(a: LaurentWindow) -> LaurentWindow:
    peak = max((abs(c) for c in a.coeffs), default=0.0)
    if peak <= ZERO_TOL:
        raise DivisionByZeroFunction("reciprocal of a (numerically) zero window")
    c = list(a.coeffs)
    L = len(c)
    inv = [1.0 / c[0]]
    for k in range(1, L):
        s = 0j
        for j in range(1, min(k, L - 1) + 1):
            s += c[j] * inv[k - j]
        inv.append(-s / c[0])
    return _normalized_window(-a.min_exponent, inv, _STRIP_REL)


def _window_div(a: LaurentWindow, b: LaurentWindow, base: complex,
                dom: DomainTag) -> LaurentWindow:
    if all(abs(c) <= ZERO_TOL for c in b.coeffs):
        raise DivisionByZeroFunction("division by a (numerically) zero window")
    if dom.is_annulus:
        fa = MeroFunction(a, base, dom)
        fb = MeroFunction(b, base, dom)
        # the quotient's expansion may have an infinite (geometrically
        # decaying) tail on both sides of the algebraic band, so pad the
        # band by the global truncation budget; tiny coefficients are
        # stripped on normalization
        lo = a.min_exponent - b.truncation_order - DEFAULT_TERMS
        hi = a.truncation_order - b.min_exponent + DEFAULT_TERMS
        length = hi - lo + 1

        def quot(zs):
            va = fa.evaluate_many(zs)
            vb = fb.evaluate_many(zs)
            small = np.abs(vb) < 1e-12 * max(1.0, float(np.abs(vb).max()))
            if small.any():
                raise DivisionByZeroFunction(
                    "denominator vanishes on the annulus sampling circle")
            return va / vb

        return _fft_expand(quot, base, dom, lo, lo + length - 1)
    return _window_mul(a, _window_reciprocal(b))


def _fft_expand(evaluate_many, base: complex, dom: DomainTag,
                lo: int, hi: int) -> LaurentWindow:
    """Laurent coefficients on an annulus by FFT on the geometric-mean circle."""
    r = float(np.sqrt(dom.r_inner * dom.r_outer))
    span = hi - lo + 1
    n = 1024
    while n < 4 * span:
        n *= 2
    theta = 2 * np.pi * np.arange(n) / n
    zs = base + r * np.exp(1j * theta)
    vals = np.asarray(evaluate_many(zs), dtype=complex)
    hat = np.fft.fft(vals) / n
    out = []
    for k in range(lo, hi + 1):
        idx = k % n
        out.append(hat[idx] / r ** k)
    return _normalized_window(lo, out, _STRIP_REL)
