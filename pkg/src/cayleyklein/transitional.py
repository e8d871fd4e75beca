"""Passage hyperbolic -> Euclidean -> elliptic through measures tangent to the Euclidean one.

Members of the family are indexed by the curvature ``kappa = -1/(4c^2)``:
``kappa < 0`` uses a real circle of radius ``2c`` around the basepoint as
absolute, ``kappa > 0`` the imaginary conic of an eye at height ``2|c|``
above it, and ``kappa = 0`` is the Euclidean plane itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from cayleyklein.errors import (
    GeometryError,
    ProbeOutOfDomain,
    RadiusTooLarge,
    WrongKind,
)
from cayleyklein.geometries import (
    CKGeometry,
    GeometryKind,
    make_euclidean,
)
from cayleyklein.measure import MeasureConstants
from cayleyklein.projective import Conic, HomPoint

CIRCLE_VERTICES = 4096


def _affine(p):
    return p.to_affine()


def tangent_hyperbolic_measure(base, p, c):
    """Hyperbolic measure whose absolute is the circle of radius ``2c`` about ``p``."""
    if base.kind is not GeometryKind.Parabolic:
        raise WrongKind("tangent measures are built on the Euclidean plane")
    if not c > 0:
        raise ValueError("c must be positive")
    px, py = _affine(p)
    conic = Conic.circle(px, py, 2 * c / base.parabolic_scale.scale)
    return CKGeometry(conic, conic.dual(), MeasureConstants(c, 0.5j), GeometryKind.Hyperbolic)


def tangent_elliptic_measure(base, p, c1):
    """Elliptic measure seen from an eye at height ``2*c1`` above ``p``.

    The distance of two plane points is ``2*c1`` times the angle they subtend
    at the eye, which is the projective measure of the imaginary conic
    ``(x-px)^2 + (y-py)^2 + (2*c1)^2 = 0`` with ``c = i*c1``.
    """
    if base.kind is not GeometryKind.Parabolic:
        raise WrongKind("tangent measures are built on the Euclidean plane")
    if not c1 > 0:
        raise ValueError("c1 must be positive")
    px, py = _affine(p)
    h = 2 * c1 / base.parabolic_scale.scale
    conic = Conic([[1.0, 0.0, -px], [0.0, 1.0, -py], [-px, -py, px * px + py * py + h * h]])
    return CKGeometry(conic, conic.dual(), MeasureConstants(1j * c1, 0.5j), GeometryKind.Elliptic)


def apex_distance(p, q, c1):
    """``2*c1`` times the angle subtended by ``p, q`` at height ``2*c1`` above ``p``."""
    px, py = _affine(p)
    qx, qy = _affine(q)
    h = 2 * c1
    u = np.array([0.0, 0.0, -h])
    v = np.array([qx - px, qy - py, -h])
    return 2 * c1 * math.atan2(np.linalg.norm(np.cross(u, v)), float(u @ v))


@dataclass(frozen=True)
class TransitFamily:
    kappa: float
    basepoint: HomPoint = field(default_factory=lambda: HomPoint(0.0, 0.0, 1.0))

    @classmethod
    def from_c(cls, c, basepoint=None):
        kappa = float((-1 / (4 * complex(c) ** 2)).real)
        return cls(kappa, basepoint if basepoint is not None else HomPoint(0.0, 0.0, 1.0))

    @property
    def c(self):
        """Measure constant: real for negative curvature, imaginary for positive, None at zero."""
        if self.kappa < 0:
            return 1 / (2 * math.sqrt(-self.kappa))
        if self.kappa > 0:
            return 1j / (2 * math.sqrt(self.kappa))
        return None

    def member(self, base=None):
        base = make_euclidean() if base is None else base
        if self.kappa < 0:
            return tangent_hyperbolic_measure(base, self.basepoint, self.c)
        if self.kappa > 0:
            return tangent_elliptic_measure(base, self.basepoint, self.c.imag)
        return base


def tangent_form(g, p):
    """Quadratic form on affine direction vectors at ``p`` that the geometry's angles use."""
    v = p.normalized().real
    v = v / v[2]
    if g.kind is GeometryKind.Parabolic:
        return np.eye(2)
    a = g.conic.scaled()
    vav = v @ a @ v
    t = [e - (v @ a @ e) / vav * v for e in np.eye(3)[:2]]
    form = np.array([[ti @ a @ tj for tj in t] for ti in t])
    return form if form[0, 0] > 0 else -form


def _circle_points(g, p, r, n):
    """Points at distance ``r`` from ``p`` in ``n`` equally spaced directions."""
    v = p.normalized().real
    v = v / v[2]
    w, q = np.linalg.eigh(tangent_form(g, p))
    inv_sqrt = q @ np.diag(1 / np.sqrt(w)) @ q.T
    theta = 2 * np.pi * np.arange(n) / n
    dirs = (inv_sqrt @ np.array([np.cos(theta), np.sin(theta)])).T
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    dh = np.column_stack([dirs, np.zeros(n)])

    cap = np.full(n, np.inf)
    if g.kind is not GeometryKind.Parabolic:
        a = g.conic.scaled()
        vav = v @ a @ v
        vad = dh @ a @ v
        dad = np.einsum("ij,jk,ik->i", dh, a, dh)
        if g.kind is GeometryKind.Hyperbolic:
            # positive root of vav + 2 t vad + t^2 dad = 0
            cap = (-vad + np.sqrt(vad * vad - vav * dad)) / dad
        else:
            # the polar line of p is where distance from p peaks
            with np.errstate(divide="ignore"):
                t_pol = -vav / vad
            cap = np.where(t_pol > 0, t_pol, np.inf)

    def dist_at(t):
        return g.dist_many(np.broadcast_to(v, dh.shape), v + t[:, None] * dh)

    hi = np.minimum(np.full(n, float(r)), 0.5 * cap)
    for _ in range(200):
        short = dist_at(hi) < r
        if not short.any():
            break
        hi = np.where(short, np.where(np.isfinite(cap), 0.5 * (hi + cap), 2 * hi), hi)
    else:
        raise RadiusTooLarge(f"no point at distance {r} along some direction")
    lo = np.zeros(n)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.all((mid == lo) | (mid == hi)):
            break
        inside = dist_at(mid) < r
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    t = 0.5 * (lo + hi)
    return v + t[:, None] * dh


def curvature_estimate(g, p, r, n=CIRCLE_VERTICES):
    """Curvature from the circumference of a geodesic circle of radius ``r``.

    Uses ``K = 3 (2 pi r - C) / (pi r^3)`` with the circumference ``C``
    replaced by the perimeter of an inscribed ``n``-gon whose vertices are
    equally spaced in angle; the Euclidean ``n``-gon perimeter takes the
    place of ``2 pi r`` so that the polygon defect cancels.
    """
    g.check_point(p)
    if n < 4096:
        raise ValueError("at least 4096 circle vertices are required")
    if g.kind is not GeometryKind.Parabolic and r >= 0.5 * math.pi * g.radius:
        raise RadiusTooLarge("geodesic circle would wrap around the elliptic plane")
    pts = _circle_points(g, p, r, n)
    perimeter = float(np.sum(g.dist_many(pts, np.roll(pts, -1, axis=0))))
    flat = 2 * n * r * math.sin(math.pi / n)
    return 6 * (flat - perimeter) / (flat * r * r * math.cos(math.pi / n) ** 2)


class TransitRow(NamedTuple):
    kappa: float
    distance: float
    angle_sum: float
    curvature: float


def probe_triangle(p, q):
    """Right isosceles probe triangle ``p, q, p + rot90(q - p)``."""
    a, b = _affine(p), _affine(q)
    d = b - a
    c = a + np.array([-d[1], d[0]])
    return p, q, HomPoint(c[0], c[1], 1.0)


def transit_sweep(family, q, kappas, third=None, radius=0.01, curvature=True):
    """Distance, probe angle sum and curvature for each ``kappa`` in order."""
    p = family.basepoint
    tri = probe_triangle(p, q) if third is None else (p, q, third)
    rows = []
    for kappa in kappas:
        g = TransitFamily(float(kappa), p).member()
        try:
            for x in tri:
                g.check_point(x)
            d = g.dist(p, q)
            s = g.triangle_angle_sum(*tri)
        except GeometryError as exc:
            raise ProbeOutOfDomain(f"probe not admissible at kappa={kappa}: {exc}") from exc
        k = curvature_estimate(g, p, radius) if curvature else math.nan
        rows.append(TransitRow(float(kappa), d, s, k))
    return rows
