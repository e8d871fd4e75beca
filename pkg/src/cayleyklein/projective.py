"""Homogeneous-coordinate primitives of the real projective plane.

Points and lines are complex coordinate triples so that imaginary
intersections and tangents need no special casing. All tolerance checks act
on representatives normalized to unit max-modulus, which makes the
thresholds scale free.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from cayleyklein.errors import (
    CoincidentLines,
    CoincidentPoints,
    DegenerateConic,
    DegenerateQuadruple,
    LineOnConic,
    NonCollinear,
    PointAtInfinity,
    PointNotAdmissible,
    SingularMatrix,
    WrongConicClass,
)

COLLINEAR_TOL = 1e-10
COINCIDENT_TOL = 1e-12
DEGENERATE_TOL = 1e-14
RANK_TOL = 1e-10
ON_CONIC_TOL = 1e-10
DOUBLE_ROOT_TOL = 1e-12


def normalize(v):
    """Scale a coordinate vector so that its largest-modulus entry is 1."""
    v = np.asarray(v, dtype=complex)
    k = int(np.argmax(np.abs(v)))
    return v / v[k]


def _cross(a, b):
    return np.cross(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def adjugate(a):
    """Adjugate of a 3x3 matrix; defined for singular input too."""
    a = np.asarray(a)
    c0, c1, c2 = a[:, 0], a[:, 1], a[:, 2]
    return np.array([np.cross(c1, c2), np.cross(c2, c0), np.cross(c0, c1)])


class _Homogeneous:
    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = coords[0]
        v = np.array(coords, dtype=complex).reshape(-1)
        if v.shape != (3,):
            raise ValueError(f"expected 3 homogeneous coordinates, got {v.shape[0]}")
        if not np.all(np.isfinite(v)):
            raise ValueError("coordinates must be finite")
        if not np.any(v != 0):
            raise ValueError("the zero triple is not a projective element")
        v.setflags(write=False)
        object.__setattr__(self, "coords", v)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def normalized(self):
        return normalize(self.coords)

    def is_real(self, tol=1e-12):
        return bool(np.max(np.abs(self.normalized().imag)) <= tol)

    def real(self):
        """Real representative; raises if the element is not real."""
        n = self.normalized()
        if np.max(np.abs(n.imag)) > 1e-9:
            raise PointNotAdmissible(f"{self!r} is not real")
        return n.real

    def same_as(self, other, tol=COINCIDENT_TOL):
        """Projective equality up to a nonzero complex scalar."""
        return bool(np.max(np.abs(_cross(self.normalized(), other.normalized()))) <= tol)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.same_as(other)

    __hash__ = None

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        parts = ", ".join(_fmt(z) for z in self.coords)
        return f"{type(self).__name__}({parts})"


def _fmt(z):
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z:g}"


class HomPoint(_Homogeneous):
    """A point of the complex projective plane."""

    __slots__ = ()

    @classmethod
    def affine(cls, x, y):
        return cls(x, y, 1.0)

    @property
    def is_finite(self):
        n = self.normalized()
        return abs(n[2]) > DEGENERATE_TOL

    def to_affine(self):
        """Real affine representative ``(x, y)``."""
        n = self.real()
        if abs(n[2]) <= DEGENERATE_TOL:
            raise PointAtInfinity(f"{self!r} is at infinity")
        return n[:2] / n[2]


class HomLine(_Homogeneous):
    """A line ``u1*x1 + u2*x2 + u3*x3 = 0``."""

    __slots__ = ()

    def incident(self, p, tol=COINCIDENT_TOL):
        return abs(np.dot(self.normalized(), p.normalized())) <= tol


LINE_AT_INFINITY = HomLine(0, 0, 1)
CIRCULAR_POINTS = (HomPoint(1, 1j, 0), HomPoint(1, -1j, 0))


class ConicClass(enum.Enum):
    RealNondegenerate = "real"
    ImaginaryNondegenerate = "imaginary"
    DegeneratePointPair = "point-pair"
    DegenerateLinePair = "line-pair"
    DoubleLine = "double-line"


class PointPosition(enum.Enum):
    Interior = "interior"
    OnConic = "on-conic"
    Exterior = "exterior"


def _symmetric(coeffs):
    a = np.array(coeffs, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"conic coefficients must be 3x3, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("conic coefficients must be finite")
    if not np.array_equal(a, a.T):
        raise ValueError("conic coefficients must be exactly symmetric")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Conic:
    """Point conic ``sum a_ij x_i x_j = 0`` given by its symmetric matrix."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _symmetric(self.coeffs))

    @classmethod
    def circle(cls, cx, cy, r):
        return cls([[1.0, 0.0, -cx], [0.0, 1.0, -cy], [-cx, -cy, cx * cx + cy * cy - r * r]])

    def bilinear(self, x, y):
        return complex(np.asarray(x, dtype=complex) @ self.coeffs @ np.asarray(y, dtype=complex))

    def value(self, x):
        return self.bilinear(x, x)

    def scaled(self):
        """Coefficients divided by their largest magnitude."""
        return self.coeffs / np.max(np.abs(self.coeffs))

    def dual(self):
        return DualConic(adjugate(self.coeffs))

    def classify(self):
        return classify_conic(self)


@dataclass(frozen=True, eq=False)
class DualConic:
    """Conic in line coordinates, ``sum A^ij u_i u_j = 0``."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _symmetric(self.coeffs))

    def bilinear(self, u, v):
        return complex(np.asarray(u, dtype=complex) @ self.coeffs @ np.asarray(v, dtype=complex))

    def value(self, u):
        return self.bilinear(u, u)

    def scaled(self):
        return self.coeffs / np.max(np.abs(self.coeffs))

    def dual(self):
        return Conic(adjugate(self.coeffs))

    def classify(self):
        return classify_conic(self)


class Collineation:
    """Projective transformation given by an invertible 3x3 matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError(f"collineation matrix must be 3x3, got {m.shape}")
        norm = np.linalg.norm(m)
        if norm == 0 or abs(np.linalg.det(m)) <= 1e-12 * norm**3:
            raise SingularMatrix("collineation matrix is singular")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("Collineation is immutable")

    def __matmul__(self, other):
        return Collineation(self.matrix @ other.matrix)

    def inverse(self):
        return Collineation(np.linalg.inv(self.matrix))

    def apply(self, obj):
        return apply_collineation(self, obj)

    __call__ = apply

    def __repr__(self):
        return f"Collineation({self.matrix.tolist()!r})"


def apply_collineation(m, obj):
    """Image of a point, line or conic under ``m``.

    Points map by ``M p``, lines by the inverse transpose and conics by
    congruence, so incidence and the conic equation are preserved.
    """
    if not isinstance(m, Collineation):
        m = Collineation(m)
    if isinstance(obj, HomPoint):
        return HomPoint(m.matrix @ obj.coords)
    if isinstance(obj, HomLine):
        return HomLine(np.linalg.solve(m.matrix.T, obj.coords))
    if isinstance(obj, (Conic, DualConic)):
        inv = np.linalg.inv(m.matrix)
        if isinstance(obj, Conic):
            image = inv.T @ obj.coeffs @ inv
        else:
            image = m.matrix @ obj.coeffs @ m.matrix.T
        if np.max(np.abs(image.imag)) > 1e-12 * np.max(np.abs(image)):
            raise ValueError("image of a real conic under a complex collineation is not real")
        image = image.real
        return type(obj)((image + image.T) / 2)
    raise TypeError(f"cannot apply a collineation to {type(obj).__name__}")


def _check_collinear(vectors):
    for a, b, c in itertools.combinations(vectors, 3):
        if abs(np.linalg.det(np.array([a, b, c]))) >= COLLINEAR_TOL:
            raise NonCollinear("elements are not on a common line (or pencil)")


def _line_coordinates(vectors):
    """Coordinates of collinear vectors in an orthonormal basis of their span."""
    stack = np.array(vectors)
    _, _, wh = np.linalg.svd(stack)
    coords = stack @ wh[:2].conj().T
    return [normalize(c) for c in coords]


def _det2(p, q):
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio(x, y, a, b):
    """Cross-ratio ``CR(x, y; a, b) = ((x-a)(y-b)) / ((x-b)(y-a))``.

    Works for four collinear points or four concurrent lines. With affine
    points ``(z, z'; 0, oo)`` the value is ``z / z'``.
    """
    vectors = [normalize(e.coords if hasattr(e, "coords") else e) for e in (x, y, a, b)]
    _check_collinear(vectors)
    if np.max(np.abs(np.cross(vectors[2], vectors[3]))) <= COINCIDENT_TOL:
        raise DegenerateQuadruple("the two reference elements coincide")
    px, py, pa, pb = _line_coordinates(vectors)
    den = _det2(px, pb) * _det2(py, pa)
    if abs(_det2(px, pb)) < DEGENERATE_TOL or abs(_det2(py, pa)) < DEGENERATE_TOL:
        raise DegenerateQuadruple("cross-ratio denominator vanishes")
    return complex(_det2(px, pa) * _det2(py, pb) / den)


def line_through(p, q):
    """The line joining two distinct points."""
    v = _cross(p.normalized(), q.normalized())
    if np.max(np.abs(v)) <= COINCIDENT_TOL:
        raise CoincidentPoints("cannot join a point to itself")
    return HomLine(v)


def meet(l, m):
    """The intersection point of two distinct lines."""
    v = _cross(l.normalized(), m.normalized())
    if np.max(np.abs(v)) <= COINCIDENT_TOL:
        raise CoincidentLines("cannot intersect a line with itself")
    return HomPoint(v)


def _require_nondegenerate(c):
    if classify_conic(c) not in (ConicClass.RealNondegenerate, ConicClass.ImaginaryNondegenerate):
        raise DegenerateConic("operation requires a nondegenerate conic")


def polar(c, p):
    """Polar line of ``p`` with respect to the conic."""
    _require_nondegenerate(c)
    return HomLine(c.coeffs @ p.coords)


def pole(c, l):
    """Pole of the line ``l``; inverse of :func:`polar`."""
    _require_nondegenerate(c)
    return HomPoint(np.linalg.solve(c.coeffs.astype(complex), l.coords))


def discriminant(coeffs, p, q):
    """``W_pq**2 - W_pp*W_qq`` for the quadratic form restricted to the pencil ``p, q``.

    Evaluated as minus the dual form on ``p x q``, which is exact for
    symmetric matrices and avoids the cancellation in the direct formula.
    """
    coeffs = np.asarray(coeffs)
    w = np.cross(np.asarray(p, dtype=complex), np.asarray(q, dtype=complex))
    return complex(-(w @ adjugate(coeffs) @ w))


def _roots(coeffs, p, q):
    """Roots of the form restricted to ``alpha*p + beta*q`` as coordinate vectors."""
    pn, qn = normalize(p), normalize(q)
    a = coeffs / np.max(np.abs(coeffs))
    wpp, wpq, wqq = pn @ a @ pn, pn @ a @ qn, qn @ a @ qn
    scale = max(abs(wpp), abs(wpq), abs(wqq))
    if scale <= COINCIDENT_TOL:
        raise LineOnConic("the line lies on the conic")
    disc = discriminant(a, pn, qn)
    if abs(disc) <= DOUBLE_ROOT_TOL * (abs(wpq) ** 2 + abs(wpp * wqq)):
        if abs(wqq) >= abs(wpp):
            root = pn - (wpq / wqq) * qn
        else:
            root = qn - (wpq / wpp) * pn
        return root, root.copy()
    s = np.sqrt(complex(disc))
    if abs(wqq) >= abs(wpp):
        # roots t of wqq t^2 + 2 wpq t + wpp = 0 give points p + t q
        big_plus = (np.conj(wpq) * s).real < 0
        if big_plus:
            t_plus = (-wpq + s) / wqq
            t_minus = wpp / (wqq * t_plus) if t_plus != 0 else (-wpq - s) / wqq
        else:
            t_minus = (-wpq - s) / wqq
            t_plus = wpp / (wqq * t_minus) if t_minus != 0 else (-wpq + s) / wqq
        return pn + t_plus * qn, pn + t_minus * qn
    # roots u of wpp u^2 + 2 wpq u + wqq = 0 give points u p + q
    big_plus = (np.conj(wpq) * s).real < 0
    if big_plus:
        u_plus = (-wpq + s) / wpp
        u_minus = wqq / (wpp * u_plus) if u_plus != 0 else (-wpq - s) / wpp
    else:
        u_minus = (-wpq - s) / wpp
        u_plus = wqq / (wpp * u_minus) if u_minus != 0 else (-wpq + s) / wpp
    return u_plus * pn + qn, u_minus * pn + qn


def line_conic_intersection(c, p, q):
    """The two (possibly complex or coincident) points where line ``pq`` meets ``c``."""
    if p.same_as(q):
        raise CoincidentPoints("need two distinct points to span a line")
    r1, r2 = _roots(c.coeffs, p.coords, q.coords)
    return HomPoint(r1), HomPoint(r2)


def equilibrate(a, sweeps=8):
    """Symmetric diagonal scaling ``D a D`` with rows of comparable size.

    A congruence, so rank and signature are unchanged; it keeps eigenvalue
    thresholds meaningful for badly scaled matrices such as huge circles.
    """
    a = np.array(a, dtype=float)
    for _ in range(sweeps):
        row = np.max(np.abs(a), axis=1)
        d = np.where(row > 0, 1 / np.sqrt(np.where(row > 0, row, 1)), 1.0)
        a = d[:, None] * a * d[None, :]
    return a


def signature(a, tol=RANK_TOL):
    """``(positive, negative)`` eigenvalue counts of a symmetric matrix."""
    eig = np.linalg.eigvalsh(equilibrate(a))
    top = np.max(np.abs(eig))
    if top == 0:
        return 0, 0
    return int(np.sum(eig > tol * top)), int(np.sum(eig < -tol * top))


def classify_conic(c):
    """Classify a (point or line) conic by the rank and signature of its matrix."""
    # coefficients are read-only, so the class can be memoized on the instance
    cached = c.__dict__.get("_class")
    if cached is None:
        cached = _classify(c.coeffs)
        object.__setattr__(c, "_class", cached)
    return cached


def _classify(coeffs):
    eig = np.linalg.eigvalsh(equilibrate(coeffs))
    top = np.max(np.abs(eig))
    if top == 0:
        return ConicClass.DoubleLine
    pos = int(np.sum(eig > RANK_TOL * top))
    neg = int(np.sum(eig < -RANK_TOL * top))
    rank = pos + neg
    if rank == 3:
        if pos == 3 or neg == 3:
            return ConicClass.ImaginaryNondegenerate
        return ConicClass.RealNondegenerate
    if rank == 2:
        if pos == 2 or neg == 2:
            return ConicClass.DegeneratePointPair
        return ConicClass.DegenerateLinePair
    return ConicClass.DoubleLine


def point_position(c, p):
    """Whether a real point lies inside, on or outside a real conic."""
    if classify_conic(c) is not ConicClass.RealNondegenerate:
        raise WrongConicClass("point position needs a real nondegenerate conic")
    x = p.real()
    a = c.scaled()
    value = x @ a @ x
    if abs(value) <= ON_CONIC_TOL * np.dot(x, x):
        return PointPosition.OnConic
    if value * np.linalg.det(a) > 0:
        return PointPosition.Interior
    return PointPosition.Exterior


def lines_through(p):
    """Two distinct lines through ``p`` spanning its pencil."""
    n = p.normalized()
    i, j = np.argsort(np.abs(n))[:2]
    e_i, e_j = np.eye(3)[i], np.eye(3)[j]
    return HomLine(np.cross(n, e_i)), HomLine(np.cross(n, e_j))


def tangents_from_point(c, p):
    """The two tangent lines from ``p`` to a nondegenerate conic.

    Real and distinct for exterior points, complex conjugate for interior
    points and a repeated polar for points on the conic.
    """
    _require_nondegenerate(c)
    l1, l2 = lines_through(p)
    r1, r2 = _roots(adjugate(c.coeffs), l1.coords, l2.coords)
    return HomLine(r1), HomLine(r2)


def points_on(l):
    """Two distinct points spanning the line ``l``."""
    a, b = lines_through(HomPoint(l.coords))
    return HomPoint(a.coords), HomPoint(b.coords)
