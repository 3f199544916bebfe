"""Log-polar surface meshing of projected curves and OBJ export.

Numeric oracles for end_model(1) over the annulus [0.25, 1]:

  metric factor at z = 0.25: (1+|g|^2)^2 |omega|^2 with g = -(2/3) z^3 and
  omega = z^-4 gives 0.25^-8 * (1 + (2/3)^2 0.25^6)^2 = 65550.223...
  de Sitter height at z = 0.25: x0 = (|F1|^2-|F2|^2+|F3|^2-|F4|^2)/2
  = (256 - 1/9 + 16 - 1/2304)/2 = 135.9443...
"""

import math

import numpy as np
import pytest

from nullsl2 import (
    MeroFunction,
    PoleOnGrid,
    SL2NullCurve,
    ball_to_hyperboloid,
    build_surface_mesh,
    end_model,
    grid_points,
    minkowski_inner,
    obj_text,
    read_obj_vertices,
    sidecar_dict,
    write_obj,
)


def identity_curve():
    one = MeroFunction.constant(1)
    zero = MeroFunction.zero()
    return SL2NullCurve(one, zero, zero, one)


def test_grid_points_layout():
    zs = grid_points(0j, (0.25, 1.0), (8, 12))
    assert zs.shape == (8, 12)
    radii = np.abs(zs[:, 0])
    assert abs(radii[0] - 0.25) < 1e-15
    assert abs(radii[-1] - 1.0) < 1e-15
    # geometric spacing: constant ratio
    ratios = radii[1:] / radii[:-1]
    assert np.ptp(ratios) < 1e-12
    # angles uniform, no duplicated seam
    angles = np.angle(zs[0, :])
    assert len(np.unique(np.round(angles, 12))) == 12


def test_mesh_h3_counts_and_ball_bound():
    mesh = build_surface_mesh(end_model(1), "h3", (8, 12), (0.25, 1.0))
    assert len(mesh.vertices) == 96
    assert len(mesh.faces) == 168          # 2 * (8-1) * 12
    norms = [sum(c * c for c in v) for v in mesh.vertices]
    assert max(norms) < 1.0
    assert abs(math.sqrt(max(norms)) - 0.99268) < 5e-4


def test_mesh_h3_hyperboloid_recheck():
    mesh = build_surface_mesh(end_model(1), "h3", (6, 8), (0.25, 1.0))
    for v in mesh.vertices:
        x = ball_to_hyperboloid(v)
        assert abs(minkowski_inner(x.as_tuple(), x.as_tuple()) + 1) < 1e-8


def test_mesh_metric_factor_head():
    mesh = build_surface_mesh(end_model(1), "h3", (8, 12), (0.25, 1.0))
    assert mesh.metric_factor is not None
    assert mesh.metric_factor[0] == pytest.approx(65550.223, rel=1e-5)


def test_mesh_s31_heights():
    mesh = build_surface_mesh(end_model(1), "s31", (8, 12), (0.25, 1.0))
    assert mesh.x0 is not None and len(mesh.x0) == 96
    assert mesh.x0[0] == pytest.approx(135.9443, rel=1e-5)
    # de Sitter membership of the raw vertices
    for v, x0 in zip(mesh.vertices[:24], mesh.x0[:24]):
        vec = (x0, v[0], v[1], v[2])
        assert abs(minkowski_inner(vec, vec) - 1) < 1e-8


def test_mesh_faces_index_range_and_wraparound():
    grid = (4, 6)
    mesh = build_surface_mesh(end_model(1), "h3", grid, (0.25, 1.0))
    n = grid[0] * grid[1]
    for face in mesh.faces:
        assert len(face) == 3
        assert all(0 <= i < n for i in face)
    # every vertex except possibly boundary rows appears in some face
    used = {i for f in mesh.faces for i in f}
    assert used == set(range(n))


def test_pole_inside_band_rejected():
    with pytest.raises(PoleOnGrid):
        build_surface_mesh(end_model(1, center=0.5), "h3", (4, 8), (0.25, 1.0))


def test_pole_strictly_inside_inner_ring_allowed():
    mesh = build_surface_mesh(end_model(2), "h3", (4, 8), (0.5, 1.0))
    assert len(mesh.vertices) == 32


def test_invalid_radii_and_grid():
    F = end_model(1)
    with pytest.raises(ValueError):
        build_surface_mesh(F, "h3", (4, 8), (1.0, 0.5))
    with pytest.raises(ValueError):
        build_surface_mesh(F, "h3", (4, 8), (-1.0, 0.5))
    with pytest.raises(ValueError):
        build_surface_mesh(F, "h3", (1, 8), (0.25, 1.0))
    with pytest.raises(ValueError):
        build_surface_mesh(F, "bad-target", (4, 8), (0.25, 1.0))


def test_det_drift_warning_for_non_unimodular():
    two = MeroFunction.constant(2)
    zero = MeroFunction.zero()
    one = MeroFunction.constant(1)
    F = SL2NullCurve(two, zero, zero, one)   # det == 2
    mesh = build_surface_mesh(F, "h3", (3, 6), (0.5, 1.0))
    assert any("det" in w for w in mesh.warnings)


def test_degenerate_spread_warning_for_constant_curve():
    mesh = build_surface_mesh(identity_curve(), "h3", (3, 6), (0.5, 1.0))
    assert any("degenerate" in w for w in mesh.warnings)


def test_horosphere_metric_is_unit():
    one = MeroFunction.constant(1)
    zero = MeroFunction.zero()
    z = MeroFunction.monomial(1)
    F = SL2NullCurve(one, zero, z, one)
    mesh = build_surface_mesh(F, "h3", (3, 6), (0.5, 1.0))
    assert mesh.metric_factor is not None
    assert all(m == pytest.approx(1.0) for m in mesh.metric_factor)


def test_flat_curve_metric_warning():
    one = MeroFunction.constant(1)
    zero = MeroFunction.zero()
    z = MeroFunction.monomial(1)
    F = SL2NullCurve(one, z, zero, one)   # derivative lives in the flat slot
    mesh = build_surface_mesh(F, "h3", (3, 6), (0.5, 1.0))
    assert any("flat" in w for w in mesh.warnings)
    assert mesh.metric_factor is not None
    assert all(m == 0.0 for m in mesh.metric_factor)


# ---------------------------------------------------------------------------
# OBJ output
# ---------------------------------------------------------------------------


def test_obj_text_structure(tmp_path):
    mesh = build_surface_mesh(end_model(1), "h3", (4, 6), (0.25, 1.0))
    text = obj_text(mesh)
    lines = text.strip().splitlines()
    assert lines[0].startswith("# null-curve surface mesh")
    v_lines = [l for l in lines if l.startswith("v ")]
    f_lines = [l for l in lines if l.startswith("f ")]
    assert len(v_lines) == len(mesh.vertices)
    assert len(f_lines) == len(mesh.faces)
    # faces are 1-based
    indices = [int(t) for l in f_lines for t in l.split()[1:]]
    assert min(indices) >= 1 and max(indices) <= len(mesh.vertices)


def test_obj_round_trip(tmp_path):
    mesh = build_surface_mesh(end_model(1), "h3", (4, 6), (0.25, 1.0))
    path = tmp_path / "end.obj"
    write_obj(mesh, path)
    verts = read_obj_vertices(path)
    assert len(verts) == len(mesh.vertices)
    for a, b in zip(verts, mesh.vertices):
        assert max(abs(u - v) for u, v in zip(a, b)) < 1e-15


def test_sidecar_dict_contents():
    mesh = build_surface_mesh(end_model(1), "s31", (4, 6), (0.25, 1.0))
    d = sidecar_dict(mesh)
    assert d["target"] == "s31"
    assert d["vertex_count"] == 24 and d["face_count"] == 36
    assert d["grid"] == [4, 6] and d["radii"] == [0.25, 1.0]
    assert "x0" in d and len(d["x0"]) == 24
    assert isinstance(d["warnings"], list)
