"""Hyperbolic, elliptic and Euclidean planes as projective measures.

A :class:`CKGeometry` bundles a fundamental conic (the absolute), its line
form, the two measure constants and a kind tag. Hyperbolic geometry lives
inside a real conic, elliptic geometry on the whole plane with an imaginary
conic, and Euclidean geometry uses the circular points as a degenerate
absolute.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from cayleyklein.errors import (
    CollinearVertices,
    DegenerateConic,
    OnAbsolute,
    PointNotAdmissible,
    PointOnLine,
    WrongKind,
)
from cayleyklein.measure import (
    MeasureConstants,
    ParabolicScale,
    angle_measure,
    distance_log_form,
    laguerre_angle,
    log_ratio,
    parabolic_distance,
)
from cayleyklein.projective import (
    CIRCULAR_POINTS,
    LINE_AT_INFINITY,
    Collineation,
    Conic,
    ConicClass,
    DualConic,
    HomPoint,
    PointPosition,
    adjugate,
    classify_conic,
    line_conic_intersection,
    line_through,
    meet,
    normalize,
    point_position,
    points_on,
    polar,
    pole,
)

ISOMETRY_TOL = 1e-9
COLLINEAR_TOL = 1e-12


class GeometryKind(enum.Enum):
    Hyperbolic = "hyperbolic"
    Elliptic = "elliptic"
    Parabolic = "parabolic"


_EXPECTED_CLASS = {
    GeometryKind.Hyperbolic: ConicClass.RealNondegenerate,
    GeometryKind.Elliptic: ConicClass.ImaginaryNondegenerate,
}


def _proportional(a, b, tol=ISOMETRY_TOL):
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    denom = np.vdot(b, b)
    if denom == 0:
        return not np.any(a)
    lam = np.vdot(b, a) / denom
    return bool(np.linalg.norm(a - lam * b) <= tol * max(np.linalg.norm(a), 1e-300)) and lam != 0


@dataclass(frozen=True, eq=False)
class CKGeometry:
    conic: Conic
    dual: DualConic
    constants: MeasureConstants
    kind: GeometryKind
    parabolic_scale: ParabolicScale = field(default_factory=ParabolicScale)

    def __post_init__(self):
        if self.kind is GeometryKind.Parabolic:
            if classify_conic(self.dual) is not ConicClass.DegeneratePointPair:
                raise ValueError("parabolic geometry needs a point-pair absolute in line coordinates")
            return
        if classify_conic(self.conic) is not _EXPECTED_CLASS[self.kind]:
            raise ValueError(f"conic does not match geometry kind {self.kind.value}")
        if not _proportional(self.dual.coeffs, adjugate(self.conic.coeffs)):
            raise ValueError("dual conic must be proportional to the adjugate of the conic")
        c = self.constants.c
        if self.kind is GeometryKind.Hyperbolic and abs(c.imag) > 1e-15 * abs(c):
            raise ValueError("hyperbolic geometry needs a real constant c")
        if self.kind is GeometryKind.Elliptic and abs(c.real) > 1e-15 * abs(c):
            raise ValueError("elliptic geometry needs a purely imaginary constant c")

    @property
    def radius(self):
        """``2|c|``: the factor turning unit-curvature lengths into this measure."""
        if self.kind is GeometryKind.Parabolic:
            return math.inf
        return 2 * abs(self.constants.c)

    @property
    def curvature(self):
        """``-1/(4c**2)``; zero for the parabolic case."""
        if self.kind is GeometryKind.Parabolic:
            return 0.0
        return float((-1 / (4 * self.constants.c**2)).real)

    @property
    def absolute_points(self):
        """The circular points, for the parabolic kind."""
        if self.kind is not GeometryKind.Parabolic:
            raise WrongKind("only the parabolic absolute is a point pair")
        return CIRCULAR_POINTS

    def check_point(self, p):
        """Raise unless ``p`` is an admissible point of this geometry."""
        if not p.is_real(1e-9):
            raise PointNotAdmissible(f"{p!r} is not a real point")
        if self.kind is GeometryKind.Parabolic:
            p.to_affine()
        elif self.kind is GeometryKind.Hyperbolic:
            pos = point_position(self.conic, p)
            if pos is PointPosition.OnConic:
                raise OnAbsolute(f"{p!r} lies on the absolute")
            if pos is PointPosition.Exterior:
                raise PointNotAdmissible(f"{p!r} lies outside the absolute")

    def dist(self, x, y):
        if self.kind is GeometryKind.Parabolic:
            return parabolic_distance(self.parabolic_scale, x, y)
        return distance_log_form(self.conic, self.constants, x, y)

    def dist_many(self, x, y):
        """Distances between rows of two arrays of real homogeneous triples.

        No admissibility checks; meant for inner loops over points already
        known to lie in the domain.
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.kind is GeometryKind.Parabolic:
            dx = x[..., :2] / x[..., 2:] - y[..., :2] / y[..., 2:]
            return self.parabolic_scale.scale * np.linalg.norm(dx, axis=-1)
        return np.abs((self.constants.c * log_ratio(self._form(), x, y)).real)

    def angle(self, u, v):
        """Angle between two lines in ``[0, pi/2]`` (lines are unoriented)."""
        if self.kind is GeometryKind.Parabolic:
            u.real(), v.real()
            return laguerre_angle(u, v)
        return angle_measure(self.dual, self.constants, u, v)

    # representatives -------------------------------------------------------

    def _form(self):
        return self.conic.scaled()

    def _reps(self, *points):
        """Real representatives scaled to ``|W(x,x)| = 1`` on a common sheet.

        Each point after the first is signed so that ``W(first, p)`` has the
        sign of ``W(first, first)``; for hyperbolic geometry this puts all of
        them on one sheet, for elliptic geometry it fixes the triangle whose
        sides from the first point are the short segments.
        """
        a = self._form()
        reps = []
        for p in points:
            v = normalize(p.real()).real
            w = v @ a @ v
            if abs(w) > 1e-13:
                v = v / math.sqrt(abs(w))
            reps.append(v)
        first = reps[0]
        s0 = np.sign(first @ a @ first)
        for i in range(1, len(reps)):
            if np.sign(first @ a @ reps[i]) != s0:
                reps[i] = -reps[i]
        return reps

    def _tangent_angle(self, va, vb, vc):
        """Interior angle at ``va`` of the triangle with fixed representatives."""
        if self.kind is GeometryKind.Parabolic:
            pa, pb, pc = (v[:2] / v[2] for v in (va, vb, vc))
            e1, e2 = pb - pa, pc - pa
            return math.atan2(abs(e1[0] * e2[1] - e1[1] * e2[0]), float(e1 @ e2))
        a = self._form()
        waa = va @ a @ va
        tb = vb - (va @ a @ vb) / waa * va
        tc = vc - (va @ a @ vc) / waa * va
        cos = (tb @ a @ tc) / math.sqrt((tb @ a @ tb) * (tc @ a @ tc))
        return math.acos(max(-1.0, min(1.0, cos)))

    def _triangle(self, a, b, c):
        for p in (a, b, c):
            self.check_point(p)
        m = np.array([normalize(p.real()).real for p in (a, b, c)])
        if abs(np.linalg.det(m)) <= COLLINEAR_TOL:
            raise CollinearVertices("triangle vertices are collinear")
        if self.kind is GeometryKind.Parabolic:
            return list(m)
        return self._reps(a, b, c)

    def vertex_angle(self, a, b, c):
        """Interior angle at ``a`` of triangle ``abc``, in ``[0, pi]``."""
        va, vb, vc = self._triangle(a, b, c)
        return self._tangent_angle(va, vb, vc)

    def triangle_angles(self, a, b, c):
        va, vb, vc = self._triangle(a, b, c)
        return (
            self._tangent_angle(va, vb, vc),
            self._tangent_angle(vb, vc, va),
            self._tangent_angle(vc, va, vb),
        )

    def triangle_angle_sum(self, a, b, c):
        return sum(self.triangle_angles(a, b, c))

    def trig_check(self, a, b, c):
        """Residuals of the law of cosines at the three vertices.

        Sides are divided by ``2|c|`` and checked against the unit-sphere law
        (elliptic), the unit-hyperbolic law (hyperbolic) or the Euclidean law.
        """
        reps = self._triangle(a, b, c)
        angles = (
            self._tangent_angle(reps[0], reps[1], reps[2]),
            self._tangent_angle(reps[1], reps[2], reps[0]),
            self._tangent_angle(reps[2], reps[0], reps[1]),
        )
        pts = (a, b, c)
        # side i is opposite vertex i
        if self.kind is GeometryKind.Parabolic:
            sides = [self.dist(pts[(i + 1) % 3], pts[(i + 2) % 3]) for i in range(3)]
        elif self.kind is GeometryKind.Hyperbolic:
            sides = [self.dist(pts[(i + 1) % 3], pts[(i + 2) % 3]) / self.radius for i in range(3)]
        else:
            form = self._form()
            sides = []
            for i in range(3):
                u, v = reps[(i + 1) % 3], reps[(i + 2) % 3]
                cos = (u @ form @ v) / math.sqrt((u @ form @ u) * (v @ form @ v))
                theta = self.dist(pts[(i + 1) % 3], pts[(i + 2) % 3]) / self.radius
                sides.append(theta if cos >= 0 else math.pi - theta)
        residuals = []
        for i in range(3):
            s0, s1, s2 = sides[i], sides[(i + 1) % 3], sides[(i + 2) % 3]
            cos_a = math.cos(angles[i])
            if self.kind is GeometryKind.Parabolic:
                r = s0 * s0 - (s1 * s1 + s2 * s2 - 2 * s1 * s2 * cos_a)
            elif self.kind is GeometryKind.Hyperbolic:
                r = math.cosh(s0) - (math.cosh(s1) * math.cosh(s2) - math.sinh(s1) * math.sinh(s2) * cos_a)
            else:
                r = math.cos(s0) - (math.cos(s1) * math.cos(s2) + math.sin(s1) * math.sin(s2) * cos_a)
            residuals.append(abs(r))
        return tuple(residuals)

    # geodesics -------------------------------------------------------------

    def segment(self, x, y):
        self.check_point(x)
        self.check_point(y)
        if self.kind is GeometryKind.Parabolic:
            if x.same_as(y):
                ends = (x, y)
            else:
                end = meet(line_through(x, y), LINE_AT_INFINITY)
                ends = (end, end)
        elif x.same_as(y):
            ends = (x, y)
        else:
            ends = line_conic_intersection(self.conic, x, y)
        return GeodesicSegment(self, x, y, ends)

    def perpendicular(self, l, q):
        """The line through ``q`` perpendicular to ``l``: it passes through the pole of ``l``."""
        if self.kind is GeometryKind.Parabolic:
            u = l.real()
            return line_through(q, HomPoint(u[0], u[1], 0))
        return line_through(q, pole(self.conic, l))

    def parallels_through_point(self, l, p):
        """The two lines through ``p`` meeting ``l`` on the absolute."""
        if self.kind is not GeometryKind.Hyperbolic:
            raise WrongKind("parallels are defined for hyperbolic geometry")
        self.check_point(p)
        if l.incident(p):
            raise PointOnLine(f"{p!r} lies on {l!r}")
        q1, q2 = points_on(l)
        a, b = line_conic_intersection(self.conic, q1, q2)
        return line_through(p, a), line_through(p, b)

    def parallel_angle(self, l, p):
        """Angle at ``p`` between its two parallels to ``l``, measured across ``l``."""
        self.parallels_through_point(l, p)
        q1, q2 = points_on(l)
        a, b = line_conic_intersection(self.conic, q1, q2)
        va, vb, vc = self._reps(p, a, b)
        return self._tangent_angle(va, vb, vc)

    # isometries and duality --------------------------------------------------

    def is_isometry(self, m):
        if not isinstance(m, Collineation):
            m = Collineation(m)
        mat = m.matrix
        if self.kind is not GeometryKind.Parabolic:
            image = mat.T @ self.conic.coeffs @ mat
            return _proportional(image, self.conic.coeffs)
        row = mat[2]
        if np.max(np.abs(row[:2])) > ISOMETRY_TOL * np.max(np.abs(mat)):
            return False
        for i_pt in CIRCULAR_POINTS:
            img = HomPoint(mat @ i_pt.coords)
            if not any(img.same_as(c, 1e-9) for c in CIRCULAR_POINTS):
                return False
        lin = mat[:2, :2] / mat[2, 2]
        return bool(abs(abs(np.linalg.det(lin)) - 1) <= ISOMETRY_TOL)

    def dual_distance_check(self, x, y):
        """Distance of two points and the angle between their polar lines."""
        if self.kind is not GeometryKind.Elliptic:
            raise WrongKind("the clean point/line duality needs the elliptic kind")
        d = self.dist(x, y)
        if x.same_as(y):
            return d, 0.0
        matched = MeasureConstants(self.constants.c, self.constants.c)
        a = angle_measure(self.dual, matched, polar(self.conic, x), polar(self.conic, y))
        return d, a


@dataclass(frozen=True, eq=False)
class GeodesicSegment:
    geometry: CKGeometry
    start: HomPoint
    end: HomPoint
    chord_ends: tuple

    @property
    def length(self):
        return self.geometry.dist(self.start, self.end)

    def point(self, t):
        """Point at fraction ``t`` of the segment's length from ``start``."""
        g = self.geometry
        if t == 0 or self.start.same_as(self.end):
            return self.start
        if t == 1:
            return self.end
        if g.kind is GeometryKind.Parabolic:
            p, q = self.start.to_affine(), self.end.to_affine()
            r = (1 - t) * p + t * q
            return HomPoint(r[0], r[1], 1.0)
        vx, vy = g._reps(self.start, self.end)
        theta = self.length / g.radius
        f = math.sinh if g.kind is GeometryKind.Hyperbolic else math.sin
        v = (f((1 - t) * theta) * vx + f(t * theta) * vy) / f(theta)
        return HomPoint(v)


def geodesic_point(seg, t):
    return seg.point(t)


def canonical_frame(conic):
    """Collineation taking ``conic`` to diagonal form with entries in {1, -1}.

    Returns ``(to_canonical, signs)`` with ``signs`` ordered so that a real
    conic becomes ``diag(1, 1, -1)`` and an imaginary one ``diag(1, 1, 1)``.
    """
    a = np.asarray(conic.coeffs, dtype=float)
    w, q = np.linalg.eigh(a)
    if np.sum(w < 0) > np.sum(w > 0):
        w = -w
    order = np.argsort(-w, kind="stable")
    w, q = w[order], q[:, order]
    if np.min(np.abs(w)) <= 1e-12 * np.max(np.abs(w)):
        raise DegenerateConic("canonical frame needs a nondegenerate conic")
    s = np.diag(np.sqrt(np.abs(w))) @ q.T
    return Collineation(s), np.sign(w)


def make_hyperbolic(conic=None, c=0.5, c_prime=0.5j):
    conic = Conic(np.diag([1.0, 1.0, -1.0])) if conic is None else conic
    return CKGeometry(conic, conic.dual(), MeasureConstants(c, c_prime), GeometryKind.Hyperbolic)


def make_elliptic(conic=None, c1=0.5, c1_prime=0.5):
    conic = Conic(np.eye(3)) if conic is None else conic
    return CKGeometry(conic, conic.dual(), MeasureConstants(1j * c1, 1j * c1_prime), GeometryKind.Elliptic)


def make_euclidean(scale=1.0):
    """Euclidean plane: double line at infinity, circular points as the dual absolute."""
    return CKGeometry(
        Conic(np.diag([0.0, 0.0, 1.0])),
        DualConic(np.diag([1.0, 1.0, 0.0])),
        MeasureConstants(1.0, -0.5j),
        GeometryKind.Parabolic,
        ParabolicScale(scale),
    )


def from_conic(coeffs, c=None, c_prime=None, scale=1.0):
    """Build the geometry matching the class of a conic, with default constants."""
    conic = coeffs if isinstance(coeffs, Conic) else Conic(coeffs)
    kind = classify_conic(conic)
    if kind is ConicClass.RealNondegenerate:
        return make_hyperbolic(conic, 0.5 if c is None else c, 0.5j if c_prime is None else c_prime)
    if kind is ConicClass.ImaginaryNondegenerate:
        return CKGeometry(
            conic,
            conic.dual(),
            MeasureConstants(0.5j if c is None else c, 0.5j if c_prime is None else c_prime),
            GeometryKind.Elliptic,
        )
    return make_euclidean(scale)


def rotation(phi):
    """Rotation about the origin; an isometry of all three canonical geometries."""
    cs, sn = math.cos(phi), math.sin(phi)
    return Collineation([[cs, -sn, 0.0], [sn, cs, 0.0], [0.0, 0.0, 1.0]])


def hyperbolic_translation(t):
    """Translation by ``t`` (curvature -1 units) along the x-axis of the unit disk."""
    ch, sh = math.cosh(t), math.sinh(t)
    return Collineation([[ch, 0.0, sh], [0.0, 1.0, 0.0], [sh, 0.0, ch]])


def reflection(conic, l):
    """Reflection in the line ``l``; fixes ``l`` pointwise and its pole."""
    a = np.asarray(conic.coeffs, dtype=float)
    u = l.real()
    s = np.linalg.solve(a, u)
    return Collineation(np.eye(3) - 2 * np.outer(s, u) / (u @ s))
