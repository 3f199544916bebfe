"""Exact-coefficient layer and meromorphic-function arithmetic."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from nullsl2 import (
    DivisionByZeroFunction,
    EvaluationAtPole,
    IdenticallyZero,
    MeroFunction,
    NonExactField,
    annulus,
    disk,
    plane,
    punctured_disk,
)
from nullsl2.exact import ExactComplex, Poly, poly_gcd

from conftest import st_rational, st_window

# ---------------------------------------------------------------------------
# exact complex rationals
# ---------------------------------------------------------------------------


def test_exact_complex_field_ops():
    a = ExactComplex(Fraction(1, 3), Fraction(-2, 7))
    b = ExactComplex(2, 5)
    assert complex(a + b) == complex(a) + complex(b)
    assert (a * b) / b == a
    assert a - a == ExactComplex(0)
    assert (1 / b) * b == ExactComplex(1)
    assert a.conjugate().conjugate() == a


def test_exact_complex_of_floats_is_lossless():
    # binary floats are dyadic rationals; conversion must be exact
    x = ExactComplex.of(0.1 + 0.25j)
    assert x.re == Fraction(0.1)
    assert x.im == Fraction(1, 4)


def test_poly_arithmetic_and_eval():
    p = Poly((1, 0, -2))        # 1 - 2 z^2
    q = Poly((0, 3))            # 3 z
    assert (p * q).degree == 3
    assert complex((p * q)(2.0)) == complex(p(2.0)) * complex(q(2.0))
    assert (p + q)(1) == p(1) + q(1)
    assert p.derivative() == Poly((0, -4))


def test_poly_gcd_cancels_common_roots():
    # (z-1)(z-2) and (z-1)(z+3) share exactly (z-1)
    a = Poly((2, -3, 1))
    b = Poly((-3, 2, 1))
    g = poly_gcd(a, b)
    assert g.degree == 1
    assert complex(g(1.0)) == 0


# ---------------------------------------------------------------------------
# rational MeroFunctions
# ---------------------------------------------------------------------------


def test_rational_evaluate_matches_hand_value():
    f = MeroFunction.from_rational((1, 2), (1, 0, 1))  # (1+2z)/(1+z^2)
    z = 0.5 + 0.25j
    expected = (1 + 2 * z) / (1 + z * z)
    assert abs(f.evaluate(z) - expected) < 1e-15


def test_rational_arith_is_exact():
    f = MeroFunction.from_rational((1,), (0, 1))       # 1/z
    g = MeroFunction.from_rational((0, 1), (1,))       # z
    assert (f * g - 1).is_identically_zero()
    assert (f + g - (g * g + 1) / g).is_identically_zero()
    h = f / f
    assert (h - 1).is_identically_zero()


def test_division_by_zero_function_raises():
    f = MeroFunction.from_rational((1,), (1,))
    with pytest.raises(DivisionByZeroFunction):
        f / MeroFunction.zero()


def test_ord_and_residue_simple_pole():
    f = MeroFunction.from_rational((3,), (0, 1))       # 3/z
    assert f.ord(0) == -1
    assert abs(f.residue(0) - 3) < 1e-14
    assert f.ord(1.0) == 0


def test_ord_of_zero_raises():
    with pytest.raises(IdenticallyZero):
        MeroFunction.zero().ord(0)


def test_higher_order_pole_and_zero():
    # z^2 / (z-1)^3
    f = MeroFunction.from_rational((0, 0, 1), (-1, 3, -3, 1))
    assert f.ord(0) == 2
    assert f.ord(1) == -3


def test_evaluate_at_pole_raises():
    f = MeroFunction.from_rational((1,), (0, 1))
    with pytest.raises(EvaluationAtPole):
        f.evaluate(0)


def test_removable_singularity_evaluates():
    # z/z == 1 even at z=0 after cancellation
    num = MeroFunction.from_rational((0, 1), (1,))
    f = num / num
    assert abs(f.evaluate(0) - 1) < 1e-15


def test_zeros_and_poles_listing():
    # (z^2-1) / (z^2+1): zeros at +-1, poles at +-i
    f = MeroFunction.from_rational((-1, 0, 1), (1, 0, 1))
    zs = sorted((complex(p) for p, _ in f.zeros()), key=lambda c: c.real)
    assert abs(zs[0] + 1) < 1e-9 and abs(zs[1] - 1) < 1e-9
    ps = {complex(p) for p, _ in f.poles()}
    assert any(abs(p - 1j) < 1e-9 for p in ps)
    assert any(abs(p + 1j) < 1e-9 for p in ps)


def test_derivative_antiderivative_round_trip():
    # (2+z)/(1+z)^3 = (z+1)^-3 + (z+1)^-2 has zero residue at -1
    f = MeroFunction.from_rational((2, 1), (1, 3, 3, 1))
    g = f.antiderivative().differentiate()
    assert (g - f).is_identically_zero()


def test_antiderivative_of_simple_pole_raises_with_period():
    f = MeroFunction.from_rational((1,), (0, 1))
    with pytest.raises(NonExactField) as exc:
        f.antiderivative()
    assert abs(exc.value.period - 2j * np.pi) < 1e-12


def test_antiderivative_partial_fraction_exactness():
    # 1/z^2 integrates to -1/z even though the denominator is non-trivial
    f = MeroFunction.from_rational((1,), (0, 0, 1))
    F = f.antiderivative()
    assert (F.differentiate() - f).is_identically_zero()
    assert F.ord(0) == -1


def test_antiderivative_with_offcenter_residue_raises():
    # 1/(z-1) has residue 1 at z=1
    f = MeroFunction.from_rational((1,), (-1, 1))
    with pytest.raises(NonExactField):
        f.antiderivative()


def test_laurent_head_of_rational():
    f = MeroFunction.from_rational((1,), (0, 0, 1))    # z^-2
    head = f.laurent_head(0, -3, 0)
    assert head[-2] == 1
    assert head[-3] == 0 and head[-1] == 0 and head[0] == 0


def test_laurent_head_at_shifted_center():
    f = MeroFunction.from_rational((1,), (-1, 1))      # 1/(z-1)
    head = f.laurent_head(1.0, -2, -1)
    assert abs(head[-1] - 1) < 1e-14
    assert head[-2] == 0


# ---------------------------------------------------------------------------
# is_identically_zero semantics
# ---------------------------------------------------------------------------


def test_zero_test_at_tol_zero_is_exact():
    tiny = MeroFunction.constant(1e-30)
    assert not tiny.is_identically_zero(0.0)
    assert MeroFunction.zero().is_identically_zero(0.0)


def test_zero_test_tolerates_float_noise_relative_to_denominator():
    # noise far below the default tolerance counts as zero ...
    noisy = MeroFunction.from_rational((1e-16,), (1,))
    assert noisy.is_identically_zero(1e-10)
    # ... and the comparison scales with the denominator
    scaled = MeroFunction.from_rational((1e-16,), (1e6,))
    assert scaled.is_identically_zero(1e-10)


# ---------------------------------------------------------------------------
# Laurent windows
# ---------------------------------------------------------------------------


def test_window_add_pointwise_and_mul_certified_head():
    dom = annulus(0.5, 2.0)
    # equal truncation orders so the sum certifies the whole window
    f = MeroFunction.from_laurent(-1, [1.0, 2.0, 0.0], domain=dom)  # z^-1 + 2
    g = MeroFunction.from_laurent(-1, [0.0, 3.0, 1.0], domain=dom)  # 3 + z
    s = f + g
    for z in (0.7, 1.1 + 0.3j, -1.5j):
        assert abs(s.evaluate(z) - (f.evaluate(z) + g.evaluate(z))) < 1e-12
    # the product certifies [n1+n2, min(T1+n2, T2+n1)] = [-1, 0]; on that
    # range the coefficients are those of (z^-1+2)(3+z) = 3z^-1 + 7 + 2z
    p = f * g
    head = p.laurent_head(0, -1, 0)
    assert abs(head[-1] - 3.0) < 1e-12
    assert abs(head[0] - 7.0) < 1e-12
    assert p.rep.truncation_order == 0


def test_window_mul_truncation_tracking():
    dom = annulus(0.5, 2.0)
    f = MeroFunction.from_laurent(-1, [1.0] * 5, domain=dom)    # T = 3
    g = MeroFunction.from_laurent(0, [1.0] * 3, domain=dom)     # T = 2
    p = f * g
    # certified range: [n1+n2, min(T1+n2, T2+n1)] = [-1, min(3, 1)] = [-1, 1]
    assert p.rep.min_exponent >= -1
    assert p.rep.truncation_order <= 3 + 0  # never beyond T1+n2


def test_window_division_on_annulus():
    dom = annulus(0.5, 2.0)
    one = MeroFunction.from_laurent(0, [1.0], domain=dom)
    den = MeroFunction.from_laurent(0, [0.3, 1.0], domain=dom)  # 0.3 + z
    q = one / den
    for z in (0.9, 1.5, -0.8 + 0.6j):
        assert abs(q.evaluate(z) - 1 / (0.3 + z)) < 1e-10


def test_window_expansion_coefficients_match_geometric_series():
    # 1/(0.3+z) = z^-1 * 1/(1+0.3/z) = z^-1 - 0.3 z^-2 + ... for |z| > 0.3
    dom = annulus(0.5, 2.0)
    one = MeroFunction.from_laurent(0, [1.0], domain=dom)
    den = MeroFunction.from_laurent(0, [0.3, 1.0], domain=dom)
    q = one / den
    head = q.laurent_head(0, -3, -1)
    assert abs(head[-1] - 1.0) < 1e-10
    assert abs(head[-2] + 0.3) < 1e-10
    assert abs(head[-3] - 0.09) < 1e-10


def test_window_derivative_and_antiderivative():
    dom = annulus(0.5, 2.0)
    f = MeroFunction.from_laurent(-2, [1.0, 0.0, 3.0], domain=dom)  # z^-2 + 3
    d = f.differentiate()
    assert abs(d.evaluate(1.3) - (-2 * 1.3 ** -3)) < 1e-12
    F = f.antiderivative()
    assert abs(F.differentiate().evaluate(0.9) - f.evaluate(0.9)) < 1e-10


def test_window_nonzero_residue_blocks_antiderivative():
    dom = annulus(0.5, 2.0)
    f = MeroFunction.from_laurent(-1, [2.0], domain=dom)
    with pytest.raises(NonExactField):
        f.antiderivative()


def test_rational_to_laurent_conversion():
    f = MeroFunction.from_rational((1,), (0.3, 1))
    w = f.to_laurent(domain=annulus(0.5, 2.0), terms=20)
    assert w.is_window
    head = w.laurent_head(0, -2, -1)
    assert abs(head[-1] - 1.0) < 1e-12
    assert abs(head[-2] + 0.3) < 1e-12


# ---------------------------------------------------------------------------
# domains and metadata
# ---------------------------------------------------------------------------


def test_domain_constructors():
    assert disk().kind == "disk"
    assert punctured_disk().kind == "punctured_disk"
    assert plane().kind == "plane"
    a = annulus(0.25, 4.0)
    assert a.is_annulus and a.r_inner == 0.25 and a.r_outer == 4.0


def test_annulus_ordering_validated():
    with pytest.raises(ValueError):
        annulus(2.0, 1.0)


def test_evaluate_many_matches_scalar():
    f = MeroFunction.from_rational((1, 1), (2, 0, 1))
    zs = np.array([0.1, 1j, -2.5 + 0.5j])
    vals = f.evaluate_many(zs)
    for z, v in zip(zs, vals):
        assert abs(v - f.evaluate(complex(z))) < 1e-14


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st_rational(), st_rational())
def test_prop_rational_ring_axioms(f, g):
    z = 0.37 + 0.41j
    try:
        fv, gv = f.evaluate(z), g.evaluate(z)
    except EvaluationAtPole:
        return
    assert abs((f + g).evaluate(z) - (fv + gv)) < 1e-9 * max(1, abs(fv) + abs(gv))
    assert abs((f * g).evaluate(z) - fv * gv) < 1e-9 * max(1, abs(fv * gv))
    assert ((f - g) + g - f).is_identically_zero(1e-12)


@settings(max_examples=60, deadline=None)
@given(st_rational())
def test_prop_derivative_of_antiderivative(f):
    try:
        g = f.antiderivative().differentiate()
    except NonExactField as exc:
        # a genuine residue: the reported period must be nonzero
        assert abs(exc.period) > 0
        return
    assert (g - f).is_identically_zero(1e-12)


@settings(max_examples=40, deadline=None)
@given(st_window(), st_window())
def test_prop_window_addition_certified_coeffs(f, g):
    s = f + g
    lo, hi = s.rep.min_exponent, s.rep.truncation_order
    sh = s.laurent_head(0, lo, hi)
    fh = f.laurent_head(0, lo, hi)
    gh = g.laurent_head(0, lo, hi)
    for k in range(lo, hi + 1):
        assert abs(sh[k] - (fh[k] + gh[k])) < 1e-9


@settings(max_examples=40, deadline=None)
@given(st_rational())
def test_prop_ord_additivity_under_multiplication(f):
    if f.is_identically_zero():
        return
    g = f * f
    try:
        assert g.ord(0) == 2 * f.ord(0)
    except IdenticallyZero:
        pass
