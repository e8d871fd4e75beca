import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleyklein.errors import (
    CoincidentLines,
    CoincidentPoints,
    DegenerateQuadruple,
    NonCollinear,
    SingularMatrix,
)
from cayleyklein.projective import (
    CIRCULAR_POINTS,
    Collineation,
    Conic,
    ConicClass,
    DualConic,
    HomLine,
    HomPoint,
    PointPosition,
    adjugate,
    apply_collineation,
    classify_conic,
    cross_ratio,
    line_conic_intersection,
    line_through,
    meet,
    point_position,
    polar,
    pole,
    signature,
    tangents_from_point,
)

UNIT = Conic(np.diag([1.0, 1.0, -1.0]))
finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_points_are_projective():
    assert HomPoint(1, 2, 3) == HomPoint(2, 4, 6)
    assert HomPoint(1, 2, 3) == HomPoint(-1j, -2j, -3j)
    assert HomPoint(1, 2, 3) != HomPoint(1, 2, 4)
    with pytest.raises(ValueError):
        HomPoint(0, 0, 0)
    with pytest.raises(AttributeError):
        HomPoint(1, 0, 0).coords = None


def test_cross_ratio_of_affine_points():
    # CR(z, z'; 0, oo) = z / z' on the x-axis
    z, z2 = HomPoint(2, 0, 1), HomPoint(3, 0, 1)
    assert cross_ratio(z, z2, HomPoint(0, 0, 1), HomPoint(1, 0, 0)) == pytest.approx(2 / 3, abs=1e-15)


def test_cross_ratio_example_value():
    # CR(0, 1; 3, -1) on the x-axis = ((0-3)(1+1)) / ((0+1)(1-3)) = 3
    p = [HomPoint(x, 0, 1) for x in (0.0, 1.0, 3.0, -1.0)]
    assert cross_ratio(*p) == pytest.approx(3.0, abs=1e-14)


def test_cross_ratio_errors():
    a, b = HomPoint(0, 0, 1), HomPoint(1, 0, 1)
    with pytest.raises(DegenerateQuadruple):
        cross_ratio(a, b, HomPoint(2, 0, 1), HomPoint(2, 0, 1))
    with pytest.raises(NonCollinear):
        cross_ratio(a, b, HomPoint(2, 0, 1), HomPoint(0, 1, 1))


@settings(max_examples=50, deadline=None)
@given(st.lists(finite, min_size=4, max_size=4, unique=True), st.integers(0, 2**31))
def test_cross_ratio_projective_invariance(ts, seed):
    if min(abs(a - b) for i, a in enumerate(ts) for b in ts[i + 1 :]) < 1e-3:
        return
    rng = np.random.default_rng(seed)
    a, b = rng.normal(size=3), rng.normal(size=3)
    pts = [HomPoint(a + t * b) for t in ts]
    m = rng.normal(size=(3, 3))
    if np.linalg.cond(m) > 1e4:
        return
    before = cross_ratio(*pts)
    after = cross_ratio(*[apply_collineation(m, p) for p in pts])
    assert abs(after - before) <= 1e-8 * max(1.0, abs(before))


def test_join_and_meet():
    l = line_through(HomPoint(0, 0, 1), HomPoint(1, 1, 1))
    assert l == HomLine(1, -1, 0)
    assert meet(HomLine(1, 0, 0), HomLine(0, 1, 0)) == HomPoint(0, 0, 1)
    with pytest.raises(CoincidentPoints):
        line_through(HomPoint(1, 2, 3), HomPoint(2, 4, 6))
    with pytest.raises(CoincidentLines):
        meet(HomLine(1, 0, 0), HomLine(3, 0, 0))


def test_line_conic_intersection_real_and_complex():
    a, b = line_conic_intersection(UNIT, HomPoint(0, 0, 1), HomPoint(0.5, 0, 1))
    got = sorted(p.to_affine()[0] for p in (a, b))
    np.testing.assert_allclose(got, [-1.0, 1.0], atol=1e-15)
    # x = 2 misses the unit circle: y = +-i sqrt(3)
    a, b = line_conic_intersection(UNIT, HomPoint(2, 0, 1), HomPoint(2, 1, 1))
    ys = sorted((p.normalized() / p.normalized()[2])[1].imag for p in (a, b))
    np.testing.assert_allclose(ys, [-math.sqrt(3), math.sqrt(3)], atol=1e-12)


def test_tangent_line_gives_double_point():
    a, b = line_conic_intersection(UNIT, HomPoint(1, -1, 1), HomPoint(1, 1, 1))
    assert a == b == HomPoint(1, 0, 1)


def test_tangents_from_exterior_point():
    t1, t2 = tangents_from_point(UNIT, HomPoint(2, 0, 1))
    for t in (t1, t2):
        u = t.normalized()
        # tangent lines satisfy u A^-1 u = 0
        assert abs(u @ np.diag([1.0, 1.0, -1.0]) @ u) < 1e-12
        assert t.incident(HomPoint(2, 0, 1))


def test_pole_polar():
    assert polar(UNIT, HomPoint(0, 0, 1)) == HomLine(0, 0, 1)
    assert pole(UNIT, HomLine(1, 0, -2)) == HomPoint(0.5, 0, 1)
    p = HomPoint(0.3, -0.2, 1)
    assert pole(UNIT, polar(UNIT, p)) == p


def test_classification():
    cases = {
        (1, 1, -1): ConicClass.RealNondegenerate,
        (1, 1, 1): ConicClass.ImaginaryNondegenerate,
        (1, 1, 0): ConicClass.DegeneratePointPair,
        (1, -1, 0): ConicClass.DegenerateLinePair,
        (0, 0, 1): ConicClass.DoubleLine,
    }
    for d, want in cases.items():
        assert classify_conic(Conic(np.diag(np.asarray(d, dtype=float)))) is want


def test_classification_of_badly_scaled_circle():
    assert classify_conic(Conic.circle(0.3, -0.1, 2e6)) is ConicClass.RealNondegenerate
    assert signature(np.diag([1.0, 1.0, -4e12])) == (2, 1)


def test_point_position():
    assert point_position(UNIT, HomPoint(0, 0, 1)) is PointPosition.Interior
    assert point_position(UNIT, HomPoint(1, 0, 1)) is PointPosition.OnConic
    assert point_position(UNIT, HomPoint(2, 0, 1)) is PointPosition.Exterior
    # sign of the matrix does not matter
    assert point_position(Conic(-UNIT.coeffs), HomPoint(0, 0, 1)) is PointPosition.Interior


def test_conics_must_be_symmetric():
    with pytest.raises(ValueError):
        Conic([[1, 2, 0], [0, 1, 0], [0, 0, 1]])


def test_collineations():
    with pytest.raises(SingularMatrix):
        Collineation(np.ones((3, 3)))
    m = Collineation([[2, 0, 1], [0, 1, 0], [0, 0, 1]])
    p = HomPoint(1, 1, 1)
    l = line_through(p, HomPoint(0, 1, 1))
    assert m.apply(l).incident(m.apply(p))
    img = apply_collineation(m, UNIT)
    q = m.apply(HomPoint(1, 0, 1)).normalized()
    assert abs(q @ img.coeffs @ q) < 1e-12
    assert (m.inverse() @ m).apply(p) == p


def test_dual_conic_and_adjugate():
    a = np.array([[2.0, 0.5, 0.1], [0.5, 1.0, 0.3], [0.1, 0.3, -1.0]])
    np.testing.assert_allclose(adjugate(a), np.linalg.det(a) * np.linalg.inv(a), atol=1e-12)
    assert isinstance(Conic(a).dual(), DualConic)


def test_circular_points_lie_on_every_circle():
    c = Conic.circle(1.5, -2.0, 3.0)
    for p in CIRCULAR_POINTS:
        v = p.coords
        assert abs(v @ c.coeffs @ v) < 1e-12
