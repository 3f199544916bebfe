"""Spinor encoding of null direction fields and exact integration."""

import numpy as np
import pytest
from hypothesis import given, settings

from nullsl2 import (
    DegenerateEta,
    EtaIdenticallyZero,
    MeroFunction,
    NonExactField,
    SpinorData,
    check_null_c3,
    extract_spinor,
    from_spinor,
    integrate_null,
    is_flat,
    spinor_common_zero_points,
)

from conftest import (
    random_integrable_spinor,
    random_spinor,
    random_window_spinor,
    st_spinor,
)


def _null_sum(field):
    f1, f2, f3 = field.components()
    return f1 * f1 + f2 * f2 + f3 * f3


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def test_eta_zero_rejected():
    with pytest.raises(EtaIdenticallyZero):
        SpinorData(MeroFunction.zero(), MeroFunction.constant(1))


def test_from_spinor_nullity_exact_hand_case():
    # eta = z, f3 = 1: q = 1/z, f1 = (z - 1/z)/2, f2 = -i(z + 1/z)/2
    s = SpinorData(MeroFunction.monomial(1), MeroFunction.constant(1))
    field = from_spinor(s)
    total = _null_sum(field)
    assert total.is_identically_zero(0.0)   # exact, not approximate
    z = 0.7 + 0.2j
    assert abs(field.f1.evaluate(z) - (z - 1 / z) / 2) < 1e-14


def test_from_spinor_conjugate_chart_flips_f2():
    s_plus = SpinorData(MeroFunction.monomial(1), MeroFunction.constant(1))
    s_minus = SpinorData(MeroFunction.monomial(1), MeroFunction.constant(1),
                         conjugate_chart=True)
    a = from_spinor(s_plus)
    b = from_spinor(s_minus)
    assert (a.f1 - b.f1).is_identically_zero(0.0)
    assert (a.f2 + b.f2).is_identically_zero(0.0)
    assert _null_sum(b).is_identically_zero(0.0)


def test_from_spinor_pole_bookkeeping_includes_eta_zeros():
    # eta = z vanishes at 0, so q = f3^2/eta may pole there
    s = SpinorData(MeroFunction.monomial(1), MeroFunction.constant(1))
    field = from_spinor(s)
    assert any(abs(p) < 1e-12 for p in field.pole_set)


def test_extract_spinor_round_trip():
    s = SpinorData(
        MeroFunction.from_rational((1, 2), (1, 0, 1)),
        MeroFunction.from_rational((0, 1), (3,)))
    field = from_spinor(s)
    back = extract_spinor(field)
    assert (back.eta - s.eta).is_identically_zero(0.0)
    assert (back.f3 - s.f3).is_identically_zero(0.0)
    field2 = from_spinor(back)
    for f, g in zip(field.components(), field2.components()):
        assert (f - g).is_identically_zero(0.0)


def test_extract_spinor_alternate_chart():
    s = SpinorData(MeroFunction.constant(2), MeroFunction.constant(0),
                   conjugate_chart=True)
    field = from_spinor(s)
    # f1 + i f2 = q = 0 here, so the default chart degenerates
    with pytest.raises(DegenerateEta):
        extract_spinor(field)
    back = extract_spinor(field, alternate_chart=True)
    assert back.conjugate_chart
    assert (back.eta - 2).is_identically_zero(0.0)


def test_spinor_common_zero_points():
    # eta = z^2, f3 = z: q = 1, no common zero; eta = z^2, f3 = z^2: q = z^2
    s1 = SpinorData(MeroFunction.monomial(2), MeroFunction.monomial(1))
    assert spinor_common_zero_points(s1) == []
    s2 = SpinorData(MeroFunction.monomial(2), MeroFunction.monomial(2))
    pts = spinor_common_zero_points(s2)
    assert len(pts) == 1 and abs(pts[0]) < 1e-8


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------


def test_integrate_null_polynomial_field():
    rng = np.random.default_rng(7)
    s = random_integrable_spinor(rng)
    field = from_spinor(s)
    X = integrate_null(field, base_point=0.5, value=(1, 2, 3))
    assert X.evaluate(0.5) == (1 + 0j, 2 + 0j, 3 + 0j)
    for comp, f in zip(X.components(), field.components()):
        assert (comp.differentiate() - f).is_identically_zero(0.0)
    rep = check_null_c3(X)
    assert rep.null


def test_integrate_null_residue_obstruction_carries_cycle():
    # eta = 1/z, f3 = 1: f1 = (1/z - z)/2 has residue 1/2 at 0
    s = SpinorData(MeroFunction.from_rational((1,), (0, 1)),
                   MeroFunction.constant(1))
    field = from_spinor(s)
    with pytest.raises(NonExactField) as exc:
        integrate_null(field)
    err = exc.value
    assert abs(err.period - 1j * np.pi) < 1e-12        # 2*pi*i * (1/2)
    assert abs(err.pole) < 1e-12
    assert err.cycle is not None and err.cycle.winding(err.pole) == 1


def test_check_null_c3_on_non_null_curve():
    X_bad = integrate_null(
        (MeroFunction.constant(1), MeroFunction.constant(1),
         MeroFunction.constant(1)))
    rep = check_null_c3(X_bad)
    assert not rep.null


def test_immersion_detects_common_derivative_zero():
    # all derivatives vanish at 0: X' = (z, i z, 0) direction
    f1 = MeroFunction.monomial(1)
    f2 = f1 * 1j
    f3 = MeroFunction.zero()
    X = integrate_null((f1, f2, f3))
    rep = check_null_c3(X)
    assert rep.null          # z^2 + (iz)^2 + 0 = 0
    assert not rep.immersion
    assert rep.flat


def test_is_flat_on_proportional_and_generic():
    f = MeroFunction.from_rational((1, 1), (2,))
    assert is_flat((f, f * 2, f * (1 + 1j)))
    g = MeroFunction.monomial(2)
    assert not is_flat((f, g, f))


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st_spinor())
def test_prop_spinor_nullity_exact(s):
    field = from_spinor(s)
    assert _null_sum(field).is_identically_zero(0.0)


@settings(max_examples=40, deadline=None)
@given(st_spinor())
def test_prop_extract_inverts_from_spinor(s):
    field = from_spinor(s)
    try:
        back = extract_spinor(field, alternate_chart=s.conjugate_chart)
    except DegenerateEta:
        # possible when f3^2 == -eta^2 makes the chosen chart vanish
        return
    regen = from_spinor(back)
    for f, g in zip(field.components(), regen.components()):
        assert (f - g).is_identically_zero(1e-12)


def test_window_spinor_nullity_residual(rng):
    for _ in range(20):
        s = random_window_spinor(rng)
        total = _null_sum(from_spinor(s))
        lo, hi = total.rep.min_exponent, total.rep.truncation_order
        if lo > hi:
            continue
        head = total.laurent_head(0, lo, hi)
        assert max(abs(v) for v in head.values()) < 1e-12
