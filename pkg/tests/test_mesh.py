import math

import numpy as np
import pytest

from rotgauss import (CurveParams, ResolutionTooLow, read_obj, revolve_mesh, solve_constant_K,
                      sphere_from_constant_principal)


def test_sphere_mesh_closed_and_area():
    c = solve_constant_K(CurveParams(3, 1.0, 0.0), count=201)
    m = revolve_mesh(c, 256)
    assert m.is_closed()
    assert m.area() == pytest.approx(4 * math.pi, rel=1e-3)
    # pole rows collapse to one vertex each
    assert len(m.vertices) == 199 * 256 + 2


def test_normals_point_outward():
    c = sphere_from_constant_principal(1.0, count=41)
    m = revolve_mesh(c, 32)
    centroids = m.vertices[m.faces].mean(axis=1)
    assert np.all(np.einsum("ij,ij->i", m.face_normals(), centroids) > 0)


def test_open_mesh_counts():
    c = solve_constant_K(CurveParams(4, 1.0, 0.5), count=11)
    m = revolve_mesh(c, 8)
    assert len(m.vertices) == 11 * 8
    assert len(m.faces) == 10 * 8 * 2
    assert not m.is_closed()


def test_area_converges_for_arch():
    from rotgauss import surface_area

    c = solve_constant_K(CurveParams(3, 1.0, 1.0), count=401)
    assert revolve_mesh(c, 512).area() == pytest.approx(surface_area(c).value, rel=1e-4)


def test_resolution_floor():
    c = solve_constant_K(CurveParams(3, 1.0, 0.0), count=11)
    with pytest.raises(ResolutionTooLow):
        revolve_mesh(c, 7)


def test_obj_roundtrip():
    c = solve_constant_K(CurveParams(3, 1.0, 0.0), count=21)
    m = revolve_mesh(c, 16, curve_id="unit sphere")
    text = m.to_obj()
    assert text.splitlines()[0] == "# source: unit sphere"
    back = read_obj(text)
    assert np.array_equal(back.vertices, m.vertices)
    assert np.array_equal(back.faces, m.faces)
    assert text == revolve_mesh(c, 16, curve_id="unit sphere").to_obj()
