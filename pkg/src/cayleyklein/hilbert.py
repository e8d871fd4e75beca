"""Hilbert metric on open convex planar bodies.

``d(x, y) = 1/2 |log CR(x, y; a, b)|`` where ``a`` and ``b`` are the points
where the line ``xy`` leaves the body. On an ellipse this is the Klein
model with curvature -1.
"""

from __future__ import annotations

import math

import numpy as np

from cayleyklein.errors import CoincidentPoints, DegenerateConic, PointNotInterior
from cayleyklein.projective import Collineation, Conic, ConicClass, apply_collineation, classify_conic

EDGE_TOL = 1e-12
INTERIOR_TOL = 1e-12


def _vec2(x):
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape != (2,) or not np.all(np.isfinite(v)):
        raise ValueError("points must be finite 2-vectors")
    return v


def _cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


class ConvexBody:
    """Open convex planar body; subclasses provide the boundary."""

    def contains(self, x):
        raise NotImplementedError

    def exit_parameters(self, x, d):
        """``t_minus < 0 < t_plus`` with ``x + t*d`` on the boundary, for a unit vector ``d``."""
        raise NotImplementedError

    def transform(self, m):
        raise NotImplementedError


class Ellipse(ConvexBody):
    """Interior of a real ellipse given by its conic."""

    def __init__(self, conic):
        if not isinstance(conic, Conic):
            conic = Conic(conic)
        if classify_conic(conic) is not ConicClass.RealNondegenerate:
            raise DegenerateConic("an ellipse needs a real nondegenerate conic")
        a = conic.scaled()
        if not np.linalg.det(a[:2, :2]) > 0:
            raise DegenerateConic("conic is not an ellipse")
        # orient so the interior is where the form is negative
        self.conic = conic
        self._a = a if a[0, 0] > 0 else -a

    @classmethod
    def unit_disk(cls):
        return cls(Conic.circle(0.0, 0.0, 1.0))

    def _value(self, x):
        h = np.append(x, 1.0)
        return float(h @ self._a @ h)

    def contains(self, x):
        x = _vec2(x)
        return self._value(x) < -INTERIOR_TOL * max(1.0, float(x @ x))

    def exit_parameters(self, x, d):
        h = np.append(x, 1.0)
        e = np.append(d, 0.0)
        qa, qb, qc = e @ self._a @ e, h @ self._a @ e, h @ self._a @ h
        s = math.sqrt(qb * qb - qa * qc)
        # stable roots of qa t^2 + 2 qb t + qc = 0 with qa > 0 > qc
        big = -qb - math.copysign(s, qb) if qb != 0 else -s
        r1, r2 = big / qa, qc / big
        return min(r1, r2), max(r1, r2)

    def transform(self, m):
        return Ellipse(apply_collineation(m, self.conic))


class Polygon(ConvexBody):
    """Interior of a strictly convex polygon with counterclockwise vertices."""

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("a polygon needs at least three 2-vectors")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        edges = np.roll(v, -1, axis=0) - v
        lengths = np.linalg.norm(edges, axis=1)
        if np.any(lengths == 0):
            raise DegenerateConic("polygon has repeated vertices")
        turn = _cross2(edges, np.roll(edges, -1, axis=0)) / (lengths * np.roll(lengths, -1))
        if np.any(turn <= EDGE_TOL):
            raise DegenerateConic("polygon is not strictly convex and counterclockwise")
        v.setflags(write=False)
        self.vertices = v
        self._edges = edges
        self._lengths = lengths

    @classmethod
    def regular(cls, n, radius=1.0, phase=0.0):
        theta = phase + 2 * np.pi * np.arange(n) / n
        return cls(radius * np.column_stack([np.cos(theta), np.sin(theta)]))

    def contains(self, x):
        x = _vec2(x)
        side = _cross2(self._edges, x - self.vertices) / self._lengths
        return bool(np.all(side > INTERIOR_TOL * max(1.0, float(np.max(np.abs(self.vertices))))))

    def exit_parameters(self, x, d):
        # solve x + t d = v_i + s e_i on every edge; a vertex belongs to the edge it starts
        den = _cross2(d, self._edges)
        rel = self.vertices - x
        with np.errstate(divide="ignore", invalid="ignore"):
            t = _cross2(rel, self._edges) / den
            s = _cross2(rel, np.broadcast_to(d, rel.shape)) / den
        hit = (den != 0) & (s >= -EDGE_TOL) & (s < 1 - EDGE_TOL)
        t = t[hit]
        return float(np.max(t[t < 0])), float(np.min(t[t > 0]))

    def transform(self, m):
        if not isinstance(m, Collineation):
            m = Collineation(m)
        h = np.column_stack([self.vertices, np.ones(len(self.vertices))]) @ m.matrix.T.real
        if np.any(h[:, 2] * h[0, 2] <= 0):
            raise PointNotInterior("collineation sends the polygon across the line at infinity")
        pts = h[:, :2] / h[:, 2:]
        if _cross2(pts[1] - pts[0], pts[2] - pts[1]) < 0:
            pts = pts[::-1]
        return Polygon(pts)


def _interior_pair(body, x, y):
    x, y = _vec2(x), _vec2(y)
    for p in (x, y):
        if not body.contains(p):
            raise PointNotInterior(f"{p.tolist()} is not strictly inside the body")
    return x, y


def _unit_chord(body, x, y):
    d = y - x
    n = float(np.linalg.norm(d))
    if n == 0:
        return None, 0.0, 0.0, 0.0
    u = d / n
    t_a, t_b = body.exit_parameters(x, u)
    return u, n, t_a, t_b


def chord_endpoints(body, x, y):
    """Boundary points of line ``xy``, the first on the side of ``x``."""
    x, y = _interior_pair(body, x, y)
    u, _, t_a, t_b = _unit_chord(body, x, y)
    if u is None:
        raise CoincidentPoints("x and y coincide; the chord is undefined")
    return x + t_a * u, x + t_b * u


def hilbert_distance(body, x, y):
    """Half the absolute log cross-ratio of ``x, y`` with the chord endpoints."""
    x, y = _interior_pair(body, x, y)
    u, n, t_a, t_b = _unit_chord(body, x, y)
    if u is None:
        return 0.0
    # unit-speed parameters: x at 0, y at n, a at t_a < 0, b at t_b > n
    return 0.5 * abs(math.log1p(-n / t_b) - math.log1p(-n / t_a))
