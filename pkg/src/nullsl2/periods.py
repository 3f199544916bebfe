"""Cycles, period integrals, spray families and the period solver.

A period here is the contour integral of a meromorphic integrand f dz over
a closed cycle.  Cycles come in two flavors -- circles (periodic trapezoid
quadrature, which converges geometrically for integrands regular near the
contour) and closed polylines (per-segment Gauss-Legendre).  For rational
integrands every period is also 2*pi*i times a winding-weighted residue
sum, and `period` cross-checks the quadrature against that value.

The solver half of the module closes small periods:  a `SprayFamily`
deforms spinor data (eta, f3) multiplicatively,

    eta_zeta = eta * exp(zeta_1 h_1 + ... + zeta_k h_k),

and `period_solve` runs a damped Newton iteration on zeta until the
periods of the first two components of the rebuilt direction field vanish
over the requested cycles.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import (CrossCheckFailed, MaxIterExceeded, PoleOnContour,
                     SingularJacobian)
from .series import (DomainTag, ExactComplex, MeroFunction, annulus,
                     _fft_expand)
from .spinor import SpinorData, from_spinor

#: cross-check tolerance between quadrature and residue periods
CROSS_CHECK_TOL = 1e-8

#: a declared pole closer to the contour than this raises PoleOnContour
POLE_DISTANCE_TOL = 1e-9

#: default exponent-window half-width for spray deformations
SPRAY_HALFWIDTH = 32

_TWO_PI_I = 2j * cmath.pi


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    """A closed integration contour: a circle or a closed polyline.

    Circles are always walked counterclockwise.  Polylines close
    themselves (the last point connects back to the first).
    """

    kind: str
    center: complex = 0j
    radius: float = 1.0
    points: tuple[complex, ...] = ()
    nodes: int = 512
    per_segment: int = 32

    @staticmethod
    def circle(center=0j, radius: float = 1.0, nodes: int = 512) -> "Cycle":
        if radius <= 0:
            raise ValueError("circle radius must be positive")
        return Cycle("circle", center=complex(center), radius=float(radius),
                     nodes=int(nodes))

    @staticmethod
    def polyline(points, per_segment: int = 32) -> "Cycle":
        pts = tuple(complex(p) for p in points)
        if len(pts) < 3:
            raise ValueError("a closed polyline needs at least 3 vertices")
        if abs(pts[0] - pts[-1]) < 1e-15:
            pts = pts[:-1]
        return Cycle("polyline", points=pts, per_segment=int(per_segment))

    # -- quadrature rule ----------------------------------------------------

    def nodes_and_weights(self) -> tuple[np.ndarray, np.ndarray]:
        """Sample points z_j and weights w_j with ``sum w_j f(z_j)``
        approximating the contour integral of f dz."""
        if self.kind == "circle":
            theta = 2 * np.pi * np.arange(self.nodes) / self.nodes
            e = np.exp(1j * theta)
            zs = self.center + self.radius * e
            ws = (1j * self.radius * e) * (2 * np.pi / self.nodes)
            return zs, ws
        x, w = np.polynomial.legendre.leggauss(self.per_segment)
        t = (x + 1.0) / 2.0
        wt = w / 2.0
        zs_parts, ws_parts = [], []
        closed = self.points + (self.points[0],)
        for a, b in zip(closed[:-1], closed[1:]):
            zs_parts.append(a + t * (b - a))
            ws_parts.append(wt * (b - a))
        return np.concatenate(zs_parts), np.concatenate(ws_parts)

    # -- geometry -------------------------------------------------------------

    def winding(self, p: complex) -> int:
        p = complex(p)
        if self.kind == "circle":
            return 1 if abs(p - self.center) < self.radius else 0
        total = 0.0
        closed = self.points + (self.points[0],)
        for a, b in zip(closed[:-1], closed[1:]):
            total += cmath.phase((b - p) / (a - p))
        return int(round(total / (2 * cmath.pi)))

    def contains(self, p: complex) -> bool:
        return self.winding(p) != 0

    def min_distance(self, p: complex) -> float:
        p = complex(p)
        if self.kind == "circle":
            return abs(abs(p - self.center) - self.radius)
        best = float("inf")
        closed = self.points + (self.points[0],)
        for a, b in zip(closed[:-1], closed[1:]):
            d = b - a
            t = ((p - a) * d.conjugate()).real / abs(d) ** 2
            t = min(1.0, max(0.0, t))
            best = min(best, abs(p - (a + t * d)))
        return best

    def as_dict(self) -> dict:
        if self.kind == "circle":
            return {"kind": "circle",
                    "center": [self.center.real, self.center.imag],
                    "radius": self.radius, "nodes": self.nodes}
        return {"kind": "polyline",
                "points": [[p.real, p.imag] for p in self.points],
                "per_segment": self.per_segment}


# ---------------------------------------------------------------------------
# periods
# ---------------------------------------------------------------------------

def _residue_near(f: MeroFunction, p: complex, clearance: float) -> complex:
    """Residue at a numerically located pole.

    If p is exactly a root of the (exact) denominator the residue comes
    from the exact Laurent expansion; otherwise it is recovered by a small
    trapezoid circle around p, which tolerates root-finding error.
    """
    pe = ExactComplex.of(complex(p))
    if f.rep.den.shift(pe).low_order() > 0:
        return f.residue(p)
    rho = 0.45 * min(1.0, clearance)
    theta = 2 * np.pi * np.arange(256) / 256
    e = np.exp(1j * theta)
    vals = f.evaluate_many(p + rho * e)
    return complex(np.mean(vals * rho * e))


def period(f: MeroFunction, cycle: Cycle, cross_check: bool = True,
           tol: float = CROSS_CHECK_TOL) -> complex:
    """Contour integral of f dz over the cycle.

    Declared poles within POLE_DISTANCE_TOL of the contour raise
    PoleOnContour.  For rational f (and unless disabled) the quadrature is
    cross-checked against 2*pi*i times the winding-weighted residue sum;
    disagreement beyond `tol` raises CrossCheckFailed.
    """
    poles = f.poles()
    for p, _ in poles:
        if cycle.min_distance(p) < POLE_DISTANCE_TOL:
            raise PoleOnContour(f"pole at {p} lies on the integration contour")
    zs, ws = cycle.nodes_and_weights()
    quad = complex(np.sum(ws * f.evaluate_many(zs)))
    if cross_check and f.is_rational and not f.rep.num.is_zero():
        total = 0j
        for p, _ in poles:
            wind = cycle.winding(p)
            if wind == 0:
                continue
            clearance = min([abs(p - q) for q, _ in poles if q != p]
                            + [cycle.min_distance(p)])
            total += wind * _residue_near(f, p, clearance)
        check = _TWO_PI_I * total
        if abs(quad - check) > tol * max(1.0, abs(quad)):
            raise CrossCheckFailed(
                f"quadrature {quad} vs residue sum {check} "
                f"differ by {abs(quad - check):.3e}")
    return quad


@dataclass(frozen=True)
class PeriodReport:
    """Period matrix: values[i][j] integrates component i over cycle j."""

    values: tuple[tuple[complex, ...], ...]
    cycles: tuple[Cycle, ...]
    cross_checked: bool

    def max_abs(self) -> float:
        flat = [abs(v) for row in self.values for v in row]
        return max(flat) if flat else 0.0

    def as_dict(self) -> dict:
        return {
            "values": [[[v.real, v.imag] for v in row] for row in self.values],
            "cycles": [c.as_dict() for c in self.cycles],
            "cross_checked": self.cross_checked,
        }


def period_map(funcs, cycles, cross_check: bool = True,
               tol: float = CROSS_CHECK_TOL) -> PeriodReport:
    """Periods of several integrands over several cycles.

    `funcs` is an iterable of MeroFunction or anything with components()
    (a direction field, say).
    """
    comps = list(funcs.components()) if hasattr(funcs, "components") \
        else list(funcs)
    cyc = tuple(cycles)
    values = tuple(
        tuple(period(f, c, cross_check=cross_check, tol=tol) for c in cyc)
        for f in comps)
    return PeriodReport(values=values, cycles=cyc, cross_checked=cross_check)


# ---------------------------------------------------------------------------
# spray families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SprayFamily:
    """Multiplicative deformation eta * exp(sum_i zeta_i basis_i) of spinor
    data, resolved on a fixed annulus when the exponent is nonconstant."""

    eta: MeroFunction
    f3: MeroFunction
    basis: tuple[MeroFunction, ...]
    domain: DomainTag = field(default_factory=lambda: annulus(0.5, 2.0))
    window_halfwidth: int = SPRAY_HALFWIDTH
    conjugate_chart: bool = False

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise ValueError("a spray family needs at least one direction")


def window_exp(f: MeroFunction, domain: DomainTag,
               halfwidth: int = SPRAY_HALFWIDTH) -> MeroFunction:
    """exp(f) as a two-sided Laurent window on an annulus domain."""
    if not domain.is_annulus:
        raise ValueError("window_exp needs an annulus domain")
    win = _fft_expand(lambda zs: np.exp(f.evaluate_many(zs)),
                      f.base_point, domain, -halfwidth, halfwidth)
    return MeroFunction(win, f.base_point, domain)


def _is_constant(f: MeroFunction) -> bool:
    return (f.is_rational and f.rep.num.degree <= 0
            and f.rep.den.degree == 0)


def spray_apply(family: SprayFamily, zeta) -> SpinorData:
    """Spinor data at parameter zeta.

    A constant exponent multiplies eta by the exact scalar exp(c), keeping
    rational representations rational; otherwise eta is pushed through a
    Laurent window on the family's annulus.
    """
    zs = np.asarray(zeta, dtype=complex).reshape(-1)
    if zs.size != len(family.basis):
        raise ValueError(
            f"zeta has {zs.size} entries for {len(family.basis)} directions")
    combo = MeroFunction.zero()
    for z, h in zip(zs, family.basis):
        if z == 0:
            continue
        combo = combo + h * complex(z)
    if _is_constant(combo):
        scalar = cmath.exp(combo.evaluate(family.eta.base_point))
        eta_z = family.eta * scalar
    else:
        factor = window_exp(combo, family.domain, family.window_halfwidth)
        eta_z = family.eta * factor
    return SpinorData(eta_z, family.f3,
                      conjugate_chart=family.conjugate_chart)


# ---------------------------------------------------------------------------
# the period solver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolveResult:
    zeta: tuple[complex, ...]
    residual_norm: float
    iterations: int
    residual_history: tuple[float, ...]
    converged: bool = True

    def as_dict(self) -> dict:
        return {
            "zeta": [[z.real, z.imag] for z in self.zeta],
            "residual_norm": self.residual_norm,
            "iterations": self.iterations,
            "residual_history": list(self.residual_history),
            "converged": self.converged,
        }


def solver_residual(family: SprayFamily, cycles, zeta) -> np.ndarray:
    """Stacked periods (f1 block, then f2 block) of the direction field
    rebuilt from the sprayed spinor data."""
    d = from_spinor(spray_apply(family, zeta))
    cyc = tuple(cycles)
    out = [period(d.f1, c, cross_check=False) for c in cyc]
    out += [period(d.f2, c, cross_check=False) for c in cyc]
    return np.array(out, dtype=complex)


def _jacobian(family: SprayFamily, cycles, zeta: np.ndarray,
              step: float) -> np.ndarray:
    k = zeta.size
    cols = []
    for j in range(k):
        e = np.zeros(k, dtype=complex)
        e[j] = step
        rp = solver_residual(family, cycles, zeta + e)
        rm = solver_residual(family, cycles, zeta - e)
        cols.append((rp - rm) / (2.0 * step))
    return np.array(cols, dtype=complex).T


def period_solve(family: SprayFamily, cycles, zeta0=None,
                 tol: float = 1e-10, max_iter: int = 20,
                 fd_step: float = 1e-6,
                 max_halvings: int = 8) -> SolveResult:
    """Damped Newton iteration closing the (f1, f2) periods.

    The exponent map is holomorphic in zeta, so the Jacobian is the
    complex-linear central difference with real step `fd_step`.  Steps are
    least-squares solutions, halved up to `max_halvings` times until the
    max-abs residual norm strictly decreases.

    Raises SingularJacobian for a zero/ill-conditioned Jacobian and
    MaxIterExceeded (carrying the best iterate) when the budget runs out.
    """
    cyc = tuple(cycles)
    if not cyc:
        raise ValueError("period_solve needs at least one cycle")
    zeta = (np.zeros(len(family.basis), dtype=complex) if zeta0 is None
            else np.asarray(zeta0, dtype=complex).reshape(-1).copy())
    if zeta.size != len(family.basis):
        raise ValueError("zeta0 length does not match the family basis")

    history: list[float] = []
    best_zeta, best_norm = zeta.copy(), float("inf")

    def fail(msg: str):
        report = SolveResult(zeta=tuple(best_zeta), residual_norm=best_norm,
                             iterations=len(history),
                             residual_history=tuple(history),
                             converged=False)
        raise MaxIterExceeded(msg, zeta=best_zeta.copy(), report=report,
                              residual_history=tuple(history))

    for _ in range(max_iter):
        resid = solver_residual(family, cyc, zeta)
        norm = float(np.abs(resid).max())
        history.append(norm)
        if norm < best_norm:
            best_zeta, best_norm = zeta.copy(), norm
        if norm <= tol:
            return SolveResult(zeta=tuple(zeta), residual_norm=norm,
                               iterations=len(history),
                               residual_history=tuple(history))
        jac = _jacobian(family, cyc, zeta, fd_step)
        # a column below the central-difference noise floor eps*scale/h is
        # indistinguishable from an identically-zero derivative: that basis
        # direction cannot move any period, and lstsq would park arbitrary
        # values there
        scale = max(1.0, float(np.abs(jac).max()))
        floor = 50.0 * np.finfo(float).eps * scale / fd_step
        dead = [j for j in range(jac.shape[1])
                if float(np.abs(jac[:, j]).max()) <= floor]
        if dead:
            raise SingularJacobian(
                f"basis direction(s) {dead} produce no period response "
                f"(Jacobian column below the finite-difference noise floor "
                f"{floor:.3e})")
        sing = np.linalg.svd(jac, compute_uv=False)
        smax = float(sing[0])
        smin = float(sing[-1])
        if smax == 0.0 or smax <= 1e-8 * max(1.0, norm):
            raise SingularJacobian(
                f"Jacobian is numerically zero (largest singular value "
                f"{smax:.3e} at residual norm {norm:.3e})")
        if smin == 0.0 or smax / smin > 1e12:
            raise SingularJacobian(
                f"Jacobian condition number {smax / max(smin, 1e-300):.3e} "
                "exceeds 1e12")
        delta, *_ = np.linalg.lstsq(jac, resid, rcond=None)
        lam = 1.0
        improved = False
        for _ in range(max_halvings + 1):
            cand = zeta - lam * delta
            cand_norm = float(np.abs(solver_residual(family, cyc, cand)).max())
            if cand_norm < norm:
                zeta = cand
                improved = True
                break
            lam /= 2.0
        if not improved:
            fail("no residual decrease along the damped Newton direction")
    fail(f"no convergence within {max_iter} iterations "
         f"(best residual {best_norm:.3e})")


__all__ = [
    "CROSS_CHECK_TOL", "POLE_DISTANCE_TOL", "SPRAY_HALFWIDTH",
    "Cycle", "PeriodReport", "SolveResult", "SprayFamily",
    "period", "period_map", "period_solve", "solver_residual",
    "spray_apply", "window_exp",
]
