"""Log-polar surface meshes of projected null curves.

The mesh samples an annulus around a center on a geometric radius ladder
(punctured ends live at the center, so the inner rings crowd toward it),
pushes each sample through the hyperbolic or de Sitter projection, and
emits a triangulated OBJ plus a JSON sidecar with per-vertex diagnostics
(conformal metric factor, and the time coordinate x0 for de Sitter
targets, whose vertices are the raw spatial part).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateDenominator, EvaluationAtPole,
                     GaussMapMismatch, PoleOnGrid)
from .invariants import omega, secondary_gauss
from .sl2curve import SL2NullCurve

#: slack added to the radius band when testing declared poles
POLE_BAND_PAD = 1e-9

MESH_TARGETS = ("h3", "s31")


@dataclass(frozen=True)
class SurfaceMesh:
    """Triangulated projection of an annular patch of a null curve."""

    target: str
    vertices: tuple[tuple[float, float, float], ...]
    faces: tuple[tuple[int, int, int], ...]  # 0-based vertex indices
    metric_factor: tuple[float, ...] | None
    x0: tuple[float, ...] | None
    warnings: tuple[str, ...]
    grid: tuple[int, int]
    radii: tuple[float, float]
    center: complex


def grid_points(center: complex, radii: tuple[float, float],
                grid: tuple[int, int]) -> np.ndarray:
    """Complex sample points, shape (rings, sectors); the angular seam is
    not duplicated."""
    n_r, n_a = grid
    rs = np.geomspace(radii[0], radii[1], n_r)
    thetas = 2 * np.pi * np.arange(n_a) / n_a
    return complex(center) + rs[:, None] * np.exp(1j * thetas)[None, :]


def _check_radii_grid(radii, grid):
    r_in, r_out = (float(radii[0]), float(radii[1]))
    if r_in <= 0:
        raise ValueError("inner radius must be positive (ends are sampled "
                         "on a punctured annulus)")
    if r_out <= r_in:
        raise ValueError("outer radius must exceed the inner radius")
    n_r, n_a = (int(grid[0]), int(grid[1]))
    if n_r < 2 or n_a < 3:
        raise ValueError("grid must be at least 2 rings by 3 sectors")
    return (r_in, r_out), (n_r, n_a)


def _declared_poles(F: SL2NullCurve) -> set[complex]:
    out = set(F.pole_set)
    for s in F.slots():
        out.update(p for p, _ in s.poles())
    return out


def _metric_samples(F: SL2NullCurve, zs: np.ndarray, warnings: list[str]):
    try:
        w = omega(F)
    except Exception as err:  # pragma: no cover - omega is a plain product
        warnings.append(f"metric factor unavailable: {err}")
        return None
    if w.is_identically_zero():
        warnings.append("flat curve: metric factor is identically zero")
        return tuple(0.0 for _ in zs)
    try:
        g = secondary_gauss(F)
    except (DegenerateDenominator, GaussMapMismatch) as err:
        warnings.append(f"metric factor unavailable: {err}")
        return None
    out = []
    bad = 0
    try:
        gv = g.evaluate_many(zs)
        wv = w.evaluate_many(zs)
        out = [float((1.0 + abs(a) ** 2) ** 2 * abs(b) ** 2)
               for a, b in zip(gv, wv)]
    except EvaluationAtPole:
        for z in zs:
            try:
                a = g.evaluate(z)
                b = w.evaluate(z)
                out.append(float((1.0 + abs(a) ** 2) ** 2 * abs(b) ** 2))
            except EvaluationAtPole:
                out.append(math.inf)
                bad += 1
    if bad:
        warnings.append(
            f"metric factor is infinite at {bad} grid point(s) "
            "(pole of the secondary Gauss map)")
    return tuple(out)


def build_surface_mesh(F: SL2NullCurve, target: str = "h3",
                       grid: tuple[int, int] = (16, 32),
                       radii: tuple[float, float] = (0.25, 1.0),
                       center: complex = 0j) -> SurfaceMesh:
    """Mesh the projection of F over the annulus radii[0] <= |z-center|
    <= radii[1].

    Declared poles whose modulus falls inside the (padded) radius band
    raise PoleOnGrid; poles strictly inside the inner ring are fine --
    meshing an end is the main use.
    """
    if target not in MESH_TARGETS:
        raise ValueError(f"target must be one of {MESH_TARGETS}")
    radii, grid = _check_radii_grid(radii, grid)
    center = complex(center)
    for p in _declared_poles(F):
        rho = abs(p - center)
        if radii[0] - POLE_BAND_PAD <= rho <= radii[1] + POLE_BAND_PAD:
            raise PoleOnGrid(
                f"pole at {p} has modulus {rho:.6g} inside the sampled "
                f"band [{radii[0]}, {radii[1]}]")
    zs = grid_points(center, radii, grid).reshape(-1)
    try:
        v1, v2, v3, v4 = (s.evaluate_many(zs) for s in F.slots())
    except EvaluationAtPole as err:
        raise PoleOnGrid(f"evaluation hit an undeclared pole: {err}") from None

    warnings: list[str] = []
    det = v1 * v4 - v2 * v3
    det_err = float(np.abs(det - 1.0).max())
    if det_err > 1e-6:
        warnings.append(
            f"determinant drifts from 1 by {det_err:.3e} on the grid; "
            "projections assume a unimodular curve")

    if target == "h3":
        h11 = np.abs(v1) ** 2 + np.abs(v2) ** 2
        h22 = np.abs(v3) ** 2 + np.abs(v4) ** 2
        h12 = v1 * np.conj(v3) + v2 * np.conj(v4)
    else:
        h11 = np.abs(v1) ** 2 - np.abs(v2) ** 2
        h22 = np.abs(v3) ** 2 - np.abs(v4) ** 2
        h12 = v1 * np.conj(v3) - v2 * np.conj(v4)
    x0 = (h11 + h22) / 2.0
    x3 = (h11 - h22) / 2.0
    x1 = h12.real
    x2 = h12.imag

    if target == "h3":
        s = 1.0 + x0
        verts = np.stack([x1 / s, x2 / s, x3 / s], axis=1)
        x0_out = None
    else:
        verts = np.stack([x1, x2, x3], axis=1)
        x0_out = tuple(float(v) for v in x0)

    spread = float(np.abs(verts - verts[0]).max())
    if spread < 1e-12:
        warnings.append("degenerate mesh: all vertices coincide")

    n_r, n_a = grid
    faces = []
    for i in range(n_r - 1):
        for j in range(n_a):
            j2 = (j + 1) % n_a
            a = i * n_a + j
            b = i * n_a + j2
            c = (i + 1) * n_a + j2
            d = (i + 1) * n_a + j
            faces.append((a, b, c))
            faces.append((a, c, d))

    metric = _metric_samples(F, zs, warnings)
    return SurfaceMesh(
        target=target,
        vertices=tuple((float(p[0]), float(p[1]), float(p[2])) for p in verts),
        faces=tuple(faces),
        metric_factor=metric,
        x0=x0_out,
        warnings=tuple(warnings),
        grid=grid,
        radii=radii,
        center=center,
    )


# ---------------------------------------------------------------------------
# OBJ round trip
# ---------------------------------------------------------------------------

def obj_text(mesh: SurfaceMesh) -> str:
    lines = [f"# null-curve surface mesh target={mesh.target} "
             f"grid={mesh.grid[0]}x{mesh.grid[1]} "
             f"radii={mesh.radii[0]:.17g}:{mesh.radii[1]:.17g}"]
    for x, y, z in mesh.vertices:
        lines.append(f"v {x:.17g} {y:.17g} {z:.17g}")
    for a, b, c in mesh.faces:
        lines.append(f"f {a + 1} {b + 1} {c + 1}")
    return "\n".join(lines) + "\n"


def write_obj(mesh: SurfaceMesh, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(obj_text(mesh))


def read_obj_vertices(path) -> list[tuple[float, float, float]]:
    out = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            if line.startswith("v "):
                _, x, y, z = line.split()
                out.append((float(x), float(y), float(z)))
    return out


def sidecar_dict(mesh: SurfaceMesh) -> dict:
    """JSON-ready companion data for an OBJ file."""
    out = {
        "target": mesh.target,
        "grid": [mesh.grid[0], mesh.grid[1]],
        "radii": [mesh.radii[0], mesh.radii[1]],
        "center": [mesh.center.real, mesh.center.imag],
        "vertex_count": len(mesh.vertices),
        "face_count": len(mesh.faces),
        "warnings": list(mesh.warnings),
    }
    if mesh.metric_factor is not None:
        out["metric_factor"] = list(mesh.metric_factor)
    if mesh.x0 is not None:
        out["x0"] = list(mesh.x0)
    return out
