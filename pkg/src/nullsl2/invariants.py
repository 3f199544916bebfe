"""Geometric invariants of SL(2,C) null curves and end classification.

For a null immersion F the derivative has rank one, so the two quotients
defining each Gauss map agree; this module checks that (via det F' == 0)
before dividing.  The invariants are

    hyperbolic Gauss map   G = F1'/F3' = F2'/F4'
    secondary Gauss map    g = -F2'/F1' = -F4'/F3'
    Wronskian one-form     omega/dz = F1 F3' - F3 F1'
    Hopf differential      Q/dz^2 = omega * dg/dz

with the Hopf differential cross-checked against the equivalent quotient
expression built from F1 and F3 alone.  End exponents at a puncture p:

    k = ord_p F1,   l = ord_p (F3/F1)',   ord_p omega = l + 2k,
    q_hat(-2) = -k(k+1+l),   multiplicity m = |l+1|,
    m^2 = (ord_p omega + 1)^2 + 4 q_hat(-2).

The first, second, and fourth relations are algebraic identities of the
normalized curve; the alternative slot-order form m = |ord F3 - ord F1|
holds for the standard models and their rotations but is not shear
invariant, so it is asserted only where applicable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateDenominator,
    GaussMapMismatch,
    HopfMismatch,
    HypothesisViolation,
    IdenticallyZero,
    NotAnEnd,
    UmbilicInput,
)
from .series import MeroFunction, ZERO_TOL
from .sl2curve import SL2NullCurve, aux_rotations


@dataclass(frozen=True)
class EndReport:
    """Classification data of one end, in the normalization described in
    the module docstring."""

    center: complex
    k: int
    l: int
    ord_omega: int
    q_hat_minus2: complex
    multiplicity: int
    regular: bool
    finite_total_curvature: bool
    smooth_candidate: bool
    min_maurer_cartan_ord: int
    hopf_head: dict[int, complex]

    def as_dict(self) -> dict:
        return {
            "center": [self.center.real, self.center.imag],
            "k": self.k,
            "l": self.l,
            "ord_omega": self.ord_omega,
            "q_hat_minus2": [self.q_hat_minus2.real, self.q_hat_minus2.imag],
            "multiplicity": self.multiplicity,
            "regular": self.regular,
            "finite_total_curvature": self.finite_total_curvature,
            "smooth_candidate": self.smooth_candidate,
            "min_maurer_cartan_ord": self.min_maurer_cartan_ord,
            "hopf_head": {str(k): [v.real, v.imag]
                          for k, v in sorted(self.hopf_head.items())},
        }


# ---------------------------------------------------------------------------
# Gauss maps and differentials
# ---------------------------------------------------------------------------

def _check_rank_one(derivs, tol: float, err_cls):
    det_d = derivs[0] * derivs[3] - derivs[1] * derivs[2]
    if not det_d.is_identically_zero(tol):
        raise err_cls("det F' != 0: the defining quotients disagree")


def hyperbolic_gauss(F: SL2NullCurve, tol: float = ZERO_TOL) -> MeroFunction:
    """G = F1'/F3' (equivalently F2'/F4'); the two must agree."""
    d = [s.differentiate() for s in F.slots()]
    den_a, den_b = d[2], d[3]
    if den_a.is_identically_zero(tol) and den_b.is_identically_zero(tol):
        raise DegenerateDenominator("both F3' and F4' vanish identically")
    _check_rank_one(d, tol, GaussMapMismatch)
    if not den_a.is_identically_zero(tol):
        return d[0] / den_a
    return d[1] / den_b


def secondary_gauss(F: SL2NullCurve, tol: float = ZERO_TOL) -> MeroFunction:
    """g = -F2'/F1' (equivalently -F4'/F3'); the two must agree."""
    d = [s.differentiate() for s in F.slots()]
    den_a, den_b = d[0], d[2]
    if den_a.is_identically_zero(tol) and den_b.is_identically_zero(tol):
        raise DegenerateDenominator("both F1' and F3' vanish identically")
    _check_rank_one(d, tol, GaussMapMismatch)
    if not den_a.is_identically_zero(tol):
        return -(d[1] / den_a)
    return -(d[3] / den_b)


def omega(F: SL2NullCurve) -> MeroFunction:
    """The Wronskian one-form omega/dz = F1 F3' - F3 F1'."""
    return F.F1 * F.F3.differentiate() - F.F3 * F.F1.differentiate()


def hopf(F: SL2NullCurve, tol: float = ZERO_TOL) -> MeroFunction:
    """Q/dz^2 computed two ways (omega * g' and the F1/F3 quotient
    expression); HopfMismatch when they disagree."""
    w = omega(F)
    if w.is_identically_zero(tol):
        raise DegenerateDenominator(
            "omega == 0 (flat input): the Hopf quotient path divides by omega")
    if F.F1.is_identically_zero(tol):
        raise DegenerateDenominator(
            "F1 == 0: the quotient path is undefined; rotate the curve first")
    g = secondary_gauss(F, tol)
    q_main = w * g.differentiate()
    f1, f3 = F.F1, F.F3
    d1 = f1.differentiate()
    dd1 = d1.differentiate()
    dd3 = f3.differentiate().differentiate()
    q_alt = dd1 / f1 - (d1 / f1) * ((dd3 * f1 - f3 * dd1) / w)
    if not (q_main - q_alt).is_identically_zero(max(tol, 1e-8)):
        raise HopfMismatch("the two Hopf computation paths disagree")
    return q_main


def induced_metric_factor(F: SL2NullCurve, z: complex) -> float:
    """Conformal factor (1+|g|^2)^2 |omega/dz|^2 of the lifted metric at z."""
    w = omega(F)
    if w.is_identically_zero():
        return 0.0
    g = secondary_gauss(F)
    gv = g.evaluate(z)
    wv = w.evaluate(z)
    return float((1.0 + abs(gv) ** 2) ** 2 * abs(wv) ** 2)


# ---------------------------------------------------------------------------
# end analysis
# ---------------------------------------------------------------------------

def _slot_ord(f: MeroFunction, p: complex) -> float:
    try:
        return f.ord(p)
    except IdenticallyZero:
        return math.inf


def _normalizations(F: SL2NullCurve, p: complex):
    """The curve and its rotations, ordered so the first entry has the
    minimum-order slot in front (first index wins ties)."""
    candidates = [F] + list(aux_rotations(F))
    ords = [_slot_ord(c.F1, p) for c in candidates]
    order = sorted(range(4), key=lambda i: (ords[i], i))
    return [candidates[i] for i in order]


def maurer_cartan_min_ord(F: SL2NullCurve, p: complex,
                          tol: float = ZERO_TOL) -> int:
    """min over slots of ord_p of F' F^-1, after rotation normalization.

    F^-1 is the adjugate [[F4, -F2], [-F3, F1]] (det F == 1), and the trace
    of F' F^-1 must vanish identically -- checked as a sanity condition.
    """
    G = _normalizations(F, p)[0]
    g1, g2, g3, g4 = G.slots()
    d1, d2, d3, d4 = (s.differentiate() for s in G.slots())
    a11 = d1 * g4 - d2 * g3
    a12 = d2 * g1 - d1 * g2
    a21 = d3 * g4 - d4 * g3
    a22 = d4 * g1 - d3 * g2
    if not (a11 + a22).is_identically_zero(max(tol, 1e-8)):
        raise HypothesisViolation(
            "trace of F' F^-1 is nonzero; the input is not unimodular")
    ords = [_slot_ord(a, p) for a in (a11, a12, a21, a22)]
    finite = [o for o in ords if o != math.inf]
    if not finite:
        raise NotAnEnd("F' F^-1 vanishes identically (constant curve)")
    return int(min(finite))


def end_multiplicity(F: SL2NullCurve, p: complex,
                     tol: float = ZERO_TOL) -> int:
    """Multiplicity of the end of F at p via m = |l+1| on the rotation
    normalization, exactly cross-checked against
    m^2 = (ord omega + 1)^2 + 4 q_hat(-2)."""
    ords = [_slot_ord(s, p) for s in F.slots()]
    if min(ords) >= 0:
        raise NotAnEnd(f"no slot has a pole at {p}")
    for G in _normalizations(F, p):
        if G.F1.is_identically_zero(tol):
            continue
        try:
            Q = hopf(G, tol)  # rotation invariant where defined
        except DegenerateDenominator:
            continue
        if Q.is_identically_zero(tol):
            raise UmbilicInput("the Hopf differential vanishes identically")
        ratio_d = (G.F3 / G.F1).differentiate()
        if ratio_d.is_identically_zero(tol):
            continue
        k = G.F1.ord(p)
        l = ratio_d.ord(p)
        m = abs(l + 1)
        ord_w = omega(G).ord(p)
        if ord_w != l + 2 * k:
            raise HypothesisViolation(
                f"ord omega = {ord_w} != l + 2k = {l + 2 * k}; "
                "the input does not satisfy the end hypotheses")
        q2 = Q.laurent_head(p, -2, -2)[-2]
        rhs = (ord_w + 1) ** 2 + 4 * q2
        if abs(m * m - rhs) > 1e-6 * max(1.0, abs(rhs)):
            raise HypothesisViolation(
                f"m^2 = {m * m} inconsistent with "
                f"(ord omega + 1)^2 + 4 q_hat(-2) = {rhs}")
        # The slot-order difference form is not shear invariant; assert it
        # only when the orders actually differ (models and rotations).
        o1, o3 = _slot_ord(G.F1, p), _slot_ord(G.F3, p)
        if o3 != o1 and math.isfinite(o3) and abs(o3 - o1) != m:
            raise HypothesisViolation(
                f"|ord F3 - ord F1| = {abs(o3 - o1)} disagrees with m = {m}")
        return m
    raise UmbilicInput(
        "flat/umbilic input: end exponents are undefined in every rotation")


def classify_end(F: SL2NullCurve, p: complex,
                 tol: float = ZERO_TOL) -> EndReport:
    """Full end report at p.  Requires the secondary Gauss map to extend
    holomorphically across p (HypothesisViolation otherwise); reports the
    exponents of the given curve and the rotation-normalized multiplicity
    and Maurer-Cartan order."""
    p = complex(p)
    ords = [_slot_ord(s, p) for s in F.slots()]
    if min(ords) >= 0:
        raise NotAnEnd(f"no slot has a pole at {p}")
    g = secondary_gauss(F, tol)
    if not g.is_identically_zero(tol) and g.ord(p) < 0:
        raise HypothesisViolation(
            f"the secondary Gauss map has a pole at {p}")
    if F.F1.is_identically_zero(tol):
        raise HypothesisViolation("F1 == 0; rotate the curve before classifying")
    k = F.F1.ord(p)
    ratio_d = (F.F3 / F.F1).differentiate()
    if ratio_d.is_identically_zero(tol):
        raise HypothesisViolation("(F3/F1)' == 0; rotate the curve first")
    l = ratio_d.ord(p)
    w = omega(F)
    if w.is_identically_zero(tol):
        raise HypothesisViolation(
            "omega == 0 for the given slot order; rotate the curve first")
    ord_w = w.ord(p)
    mult = end_multiplicity(F, p, tol)
    try:
        Q = hopf(F, tol)
    except DegenerateDenominator as exc:
        raise UmbilicInput(str(exc)) from exc
    if Q.is_identically_zero(tol):
        raise UmbilicInput("the Hopf differential vanishes identically")
    if Q.ord(p) < -2:
        raise HypothesisViolation(
            "ord Q < -2: the end is not of the admissible type")
    head = Q.laurent_head(p, -2, 2)
    min_mc = maurer_cartan_min_ord(F, p, tol)
    return EndReport(
        center=p,
        k=int(k),
        l=int(l),
        ord_omega=int(ord_w),
        q_hat_minus2=head[-2],
        multiplicity=int(mult),
        regular=True,
        finite_total_curvature=True,
        smooth_candidate=(mult == 1 and min_mc == -2),
        min_maurer_cartan_ord=int(min_mc),
        hopf_head=head,
    )
