"""Geometries on quadric surfaces in 3-space.

A *line* is the section of a central quadric by a plane through its centre.
Lengths along a section and angles between sections at a common point are
logarithms of cross-ratios: lengths against the two points at infinity of
the section, angles against the two generators through the point. Both
cross-ratios are taken in a pencil of lines (through the centre, or through
the point inside its tangent plane), so they reduce to a binary quadratic
form ``R`` and two direction vectors ``u, v``::

    log CR = log((Ruv + s) / (Ruv - s)),   s**2 = Ruv**2 - Ruu*Rvv = -det(R) * det(u, v)**2

The logarithm is halved, and divided by ``i`` when the reference pair is
imaginary, so the unit sphere gives ordinary arc length and angle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from cayleyklein.errors import (
    GeneratorTangency,
    ParabolicSection,
    PointNotOnLine,
    PointNotOnLines,
    PointNotOnQuadric,
    WrongQuadricKind,
)
from cayleyklein.projective import RANK_TOL, adjugate, signature

ON_SURFACE_TOL = 1e-10
CENTRE_TOL = 1e-10
PARABOLIC_TOL = 1e-12
NULL_TOL = 1e-9


class QuadricGeometryKind(enum.Enum):
    Spherical = "spherical"
    Hyperbolic = "hyperbolic"
    Euclidean = "euclidean"
    DeSitter = "de-sitter"
    OtherDegenerate = "other"


class LineKind(enum.Enum):
    FirstKind = "first"
    SecondKind = "second"


def _symmetric4(coeffs):
    a = np.array(coeffs, dtype=float)
    if a.shape != (4, 4):
        raise ValueError(f"quadric coefficients must be 4x4, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("quadric coefficients must be finite")
    if not np.array_equal(a, a.T):
        raise ValueError("quadric coefficients must be exactly symmetric")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Quadric3:
    """Surface ``[x 1] Q [x 1]^T = 0`` for a symmetric 4x4 ``Q``."""

    coeffs: np.ndarray

    def __post_init__(self):
        a = _symmetric4(self.coeffs)
        object.__setattr__(self, "coeffs", a / np.max(np.abs(a)) if np.any(a) else a)

    @classmethod
    def diagonal(cls, *d):
        return cls(np.diag(np.asarray(d, dtype=float)))

    @property
    def quadratic_part(self):
        return self.coeffs[:3, :3]

    def value(self, p):
        h = np.append(np.asarray(p, dtype=float), 1.0)
        return float(h @ self.coeffs @ h)

    def gradient(self, p):
        """Half the gradient of the defining polynomial at ``p``."""
        p = np.asarray(p, dtype=float)
        return self.quadratic_part @ p + self.coeffs[:3, 3]

    @property
    def is_central(self):
        a = self.quadratic_part
        return abs(np.linalg.det(a)) > RANK_TOL * np.max(np.abs(a)) ** 3 if np.any(a) else False

    @property
    def centre(self):
        if not self.is_central:
            raise WrongQuadricKind("quadric has no centre")
        return np.linalg.solve(self.quadratic_part, -self.coeffs[:3, 3])

    def contains(self, p, tol=ON_SURFACE_TOL):
        p = np.asarray(p, dtype=float)
        return abs(self.value(p)) <= tol * max(1.0, float(p @ p))

    def classify(self):
        return classify_quadric(self)


def classify_quadric(q):
    """Name the geometry carried by a quadric from the signatures of ``Q`` and its quadratic part."""
    pos, neg = signature(q.coeffs)
    qpos, qneg = signature(q.quadratic_part)
    if pos + neg < 4:
        return QuadricGeometryKind.OtherDegenerate
    if qneg > qpos:
        pos, neg, qpos, qneg = neg, pos, qneg, qpos
    if (qpos, qneg) == (3, 0):
        return QuadricGeometryKind.Spherical if neg == 1 else QuadricGeometryKind.OtherDegenerate
    if (qpos, qneg) == (2, 1):
        return QuadricGeometryKind.DeSitter if neg == 2 else QuadricGeometryKind.Hyperbolic
    if (qpos, qneg) == (2, 0):
        return QuadricGeometryKind.Euclidean
    return QuadricGeometryKind.OtherDegenerate


def _plane_basis(normal):
    """Orthonormal 3x2 basis of the plane orthogonal to ``normal``."""
    _, _, vh = np.linalg.svd(np.asarray(normal, dtype=float).reshape(1, 3))
    return vh[1:].T


def _restricted(a, basis):
    r = basis.T @ a @ basis
    return (r + r.T) / 2


def _section_det(a, normal):
    """Determinant of the quadratic part restricted to the plane, for an orthonormal basis."""
    n = np.asarray(normal, dtype=float)
    return float(n @ adjugate(a) @ n) / float(n @ n)


def _require_point(q, p, err=PointNotOnQuadric):
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise ValueError("points on a quadric are 3-vectors")
    if not q.contains(p):
        raise err(f"{p.tolist()} is not on the quadric")
    return p


@dataclass(frozen=True, eq=False)
class QLine:
    """Section of a central quadric by a diametral plane ``plane . [x 1] = 0``."""

    quadric: Quadric3
    plane: np.ndarray
    kind: LineKind | None = None

    def __post_init__(self):
        plane = np.array(self.plane, dtype=float).reshape(-1)
        if plane.shape != (4,) or not np.any(plane[:3]):
            raise ValueError("plane must be a 4-vector with a nonzero normal")
        plane = plane / np.linalg.norm(plane[:3])
        centre = self.quadric.centre
        if abs(plane[:3] @ centre + plane[3]) > CENTRE_TOL * max(1.0, float(np.linalg.norm(centre))):
            raise ValueError("plane does not pass through the centre of the quadric")
        plane.setflags(write=False)
        object.__setattr__(self, "plane", plane)
        if self.kind is None:
            object.__setattr__(self, "kind", _section_kind(self.quadric, plane[:3]))

    @classmethod
    def diametral(cls, q, normal):
        n = np.asarray(normal, dtype=float)
        return cls(q, np.append(n, -n @ q.centre))

    @classmethod
    def through(cls, q, p1, p2):
        """The diametral section containing two points (not collinear with the centre)."""
        c = q.centre
        n = np.cross(np.asarray(p1, dtype=float) - c, np.asarray(p2, dtype=float) - c)
        if np.linalg.norm(n) <= 1e-12 * max(1.0, np.linalg.norm(p1 - c) * np.linalg.norm(p2 - c)):
            raise ValueError("points are collinear with the centre; the section is not unique")
        return cls.diametral(q, n)

    @property
    def normal(self):
        return self.plane[:3]

    def contains(self, p, tol=ON_SURFACE_TOL):
        p = np.asarray(p, dtype=float)
        return abs(self.plane[:3] @ p + self.plane[3]) <= tol * max(1.0, float(np.linalg.norm(p)))


def _section_kind(q, normal):
    a = q.quadratic_part
    det = _section_det(a, normal)
    if abs(det) <= PARABOLIC_TOL * np.max(np.abs(a)) ** 2:
        return None
    return LineKind.FirstKind if det > 0 else LineKind.SecondKind


def _pencil_log(r, u, v):
    """``log CR(u, v; a, b)`` for the null directions ``a, b`` of the binary form ``r``."""
    ruv = float(u @ r @ v)
    det = float(np.linalg.det(r))
    if abs(det) <= PARABOLIC_TOL * np.max(np.abs(r)) ** 2:
        # coincident null directions: the cross-ratio is 1
        return 0j
    disc = -det * float(u[0] * v[1] - u[1] * v[0]) ** 2
    s = np.sqrt(complex(disc))
    if abs(s) < 0.5 * abs(ruv):
        return complex(2 * np.arctanh(s / ruv))
    return complex(np.log((ruv + s) / (ruv - s)))


def _half_log_measure(r, u, v):
    """Half the log cross-ratio, divided by ``i`` for an imaginary reference pair."""
    value = 0.5 * _pencil_log(r, u, v)
    if np.linalg.det(r) > 0:
        return abs(value.imag)
    # mixed-type pairs pick up i*pi from a negative cross-ratio; keep the modulus part
    return abs(value.real)


def generators_at(q, p):
    """Directions of the two generators through ``p``.

    They are the null directions of the quadratic part restricted to the
    tangent plane: real and distinct on a ruled quadric, complex conjugate
    otherwise. Each is scaled to unit max-modulus.
    """
    p = _require_point(q, p)
    basis = _plane_basis(q.gradient(p))
    r = _restricted(q.quadratic_part, basis)
    a, b, c = r[0, 0], r[0, 1], r[1, 1]
    s = np.sqrt(complex(b * b - a * c))
    if abs(a) >= abs(c):
        w = [np.array([-b + s, a]), np.array([-b - s, a])]
    else:
        w = [np.array([c, -b + s]), np.array([c, -b - s])]
    out = []
    for wi in w:
        d = basis.astype(complex) @ wi
        out.append(d / d[np.argmax(np.abs(d))])
    return out[0], out[1]


def _tangent_direction(q, l, p):
    t = np.cross(l.normal, q.gradient(p))
    n = np.linalg.norm(t)
    if n <= 1e-12 * max(1.0, float(np.linalg.norm(q.gradient(p)))):
        raise GeneratorTangency("section plane is tangent to the surface at the point")
    return t / n


def qangle(q, p, l1, l2):
    """Angle at ``p`` between two sections, from the cross-ratio of their tangents with the generators.

    Lines through ``p`` are unoriented, so the value lies in ``[0, pi/2]``
    when the generators are imaginary.
    """
    p = _require_point(q, p, PointNotOnLines)
    if not (l1.contains(p) and l2.contains(p)):
        raise PointNotOnLines("point is not on both sections")
    basis = _plane_basis(q.gradient(p))
    r = _restricted(q.quadratic_part, basis)
    u = basis.T @ _tangent_direction(q, l1, p)
    v = basis.T @ _tangent_direction(q, l2, p)
    if abs(u[0] * v[1] - u[1] * v[0]) <= 1e-12:
        return 0.0
    if np.linalg.det(r) <= 0:
        top = np.max(np.abs(r))
        for w in (u, v):
            if abs(w @ r @ w) <= NULL_TOL * top:
                raise GeneratorTangency("a section is tangent to a generator at the point")
    theta = _half_log_measure(r, u, v)
    if np.linalg.det(r) > 0:
        theta = math.fmod(theta, math.pi)
        theta = min(theta, math.pi - theta)
    return theta


def qarc_length(q, l, p1, p2):
    """Length of the arc ``p1 p2`` of a section, from the cross-ratio with its points at infinity.

    The cross-ratio is taken in the pencil of lines through the centre.
    Elliptic sections give arcs in ``[0, pi]`` (per unit radius of the
    form); a section made of two parallel generators gives length zero.
    """
    p1 = _require_point(q, p1, PointNotOnLine)
    p2 = _require_point(q, p2, PointNotOnLine)
    if not (l.contains(p1) and l.contains(p2)):
        raise PointNotOnLine("point is not on the section")
    c = q.centre
    basis = _plane_basis(l.normal)
    r = _restricted(q.quadratic_part, basis)
    u, v = basis.T @ (p1 - c), basis.T @ (p2 - c)
    if np.allclose(u, v, rtol=0, atol=1e-15 * max(1.0, float(np.linalg.norm(u)))):
        return 0.0
    if l.kind is None:
        return 0.0
    length = _half_log_measure(r, u, v)
    if l.kind is LineKind.FirstKind and (u @ r @ v) * (u @ r @ u) < 0:
        length = math.pi - length
    return length


def desitter_null_check(q, p1, p2):
    """Whether two points of a one-sheeted hyperboloid lie on a common real generator."""
    if classify_quadric(q) is not QuadricGeometryKind.DeSitter:
        raise WrongQuadricKind("null generators exist only on the one-sheeted hyperboloid")
    p1, p2 = _require_point(q, p1), _require_point(q, p2)
    d = p2 - p1
    dd = float(d @ d)
    if dd == 0:
        return True
    a = q.quadratic_part
    return abs(float(d @ a @ d)) <= NULL_TOL * np.max(np.abs(a)) * dd


def line_kind(q, l):
    """First kind for an elliptic section, second kind for a hyperbolic one."""
    if classify_quadric(q) is not QuadricGeometryKind.DeSitter:
        raise WrongQuadricKind("line kinds are defined on the one-sheeted hyperboloid")
    kind = _section_kind(q, l.normal)
    if kind is None:
        raise ParabolicSection("the plane is tangent to the asymptotic cone")
    return kind
