import itertools
import math

import numpy as np
import pytest

from cayleyklein.errors import ProbeOutOfDomain, RadiusTooLarge, WrongKind
from cayleyklein.geometries import GeometryKind, make_elliptic, make_euclidean, make_hyperbolic
from cayleyklein.projective import HomPoint
from cayleyklein.transitional import (
    TransitFamily,
    apex_distance,
    curvature_estimate,
    probe_triangle,
    tangent_elliptic_measure,
    tangent_hyperbolic_measure,
    transit_sweep,
)

BASE = make_euclidean()
O = HomPoint(0, 0, 1)


def test_curvature_estimates():
    assert curvature_estimate(make_hyperbolic(), O, 0.01) == pytest.approx(-1, abs=1e-3)
    assert curvature_estimate(make_elliptic(), O, 0.01) == pytest.approx(1, abs=1e-3)
    assert abs(curvature_estimate(BASE, O, 0.01)) <= 1e-6


def test_curvature_scales_with_c():
    g = make_hyperbolic(c=1.0)
    assert curvature_estimate(g, HomPoint(0.2, -0.1, 1), 0.01) == pytest.approx(-0.25, abs=1e-3)


def test_curvature_guards():
    with pytest.raises(ValueError):
        curvature_estimate(BASE, O, 0.01, n=100)
    with pytest.raises(RadiusTooLarge):
        curvature_estimate(make_elliptic(), O, 2.0)


def test_tangent_measures_agree_near_basepoint():
    p, q = HomPoint(0.3, -0.2, 1), HomPoint(0.9, 0.4, 1)
    d0 = BASE.dist(p, q)
    errs = []
    for c in (1e2, 1e3, 1e4):
        errs.append(abs(tangent_hyperbolic_measure(BASE, p, c).dist(p, q) - d0))
    orders = [math.log10(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 1.9
    for c in (1e6,):
        assert abs(tangent_hyperbolic_measure(BASE, p, c).dist(p, q) - d0) <= 1e-9
        assert abs(tangent_elliptic_measure(BASE, p, c).dist(p, q) - d0) <= 1e-9


def test_tangent_elliptic_matches_eye_angle():
    p, q = HomPoint(0.2, 0.1, 1), HomPoint(1.5, -0.7, 1)
    for c1 in (0.3, 1.0, 7.0):
        g = tangent_elliptic_measure(BASE, p, c1)
        assert g.kind is GeometryKind.Elliptic
        assert g.dist(p, q) == pytest.approx(apex_distance(p, q, c1), abs=1e-13)


def test_tangent_measures_need_euclidean_base():
    with pytest.raises(WrongKind):
        tangent_hyperbolic_measure(make_hyperbolic(), O, 1.0)


def test_family_constants():
    assert TransitFamily(-1.0).c == pytest.approx(0.5)
    assert TransitFamily(1.0).c == pytest.approx(0.5j)
    assert TransitFamily(0.0).c is None
    assert TransitFamily.from_c(0.5).kappa == pytest.approx(-1.0)
    assert TransitFamily.from_c(0.5j).kappa == pytest.approx(1.0)
    assert TransitFamily(0.0).member().kind is GeometryKind.Parabolic


def test_sweep_rows():
    q = HomPoint(0.5, 0, 1)
    rows = transit_sweep(TransitFamily(-1.0), q, np.linspace(-1, 1, 5), curvature=False)
    assert [r.kappa for r in rows] == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert rows[2].distance == pytest.approx(0.5, abs=1e-15)
    assert rows[0].distance == pytest.approx(math.atanh(0.5 / 1.0) * 1.0, abs=1e-12)
    sums = [r.angle_sum for r in rows]
    assert all(b > a for a, b in itertools.pairwise(sums))
    assert rows[2].angle_sum == pytest.approx(math.pi, abs=1e-12)


def test_probe_outside_domain():
    with pytest.raises(ProbeOutOfDomain):
        transit_sweep(TransitFamily(-1.0), HomPoint(0.5, 0, 1), [-4.0], curvature=False)


def test_probe_triangle_is_right_isosceles():
    _, _, r = probe_triangle(HomPoint(1, 1, 1), HomPoint(2, 1, 1))
    np.testing.assert_allclose(r.to_affine(), [1, 2])
