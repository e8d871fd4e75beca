"""Projective measures of distance and angle relative to a fundamental conic.

The distance between ``x`` and ``y`` is ``c`` times the logarithm of the
cross-ratio of ``x, y`` with the two points where their join meets the
conic. In terms of the bilinear form ``W`` of the conic this is::

    c * log((Wxy + sqrt(Wxy**2 - Wxx*Wyy)) / (Wxy - sqrt(Wxy**2 - Wxx*Wyy)))

and the equivalent arccos and arcsin forms. Angles between lines use the
same expression with the line-coordinate (dual) form and a second constant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from cayleyklein.errors import (
    DegenerateConic,
    DegenerateDual,
    InvalidLambda,
    OnAbsolute,
    PointAtInfinity,
    PointNotAdmissible,
)
from cayleyklein.projective import (
    CIRCULAR_POINTS,
    ConicClass,
    HomLine,
    PointPosition,
    adjugate,
    classify_conic,
    cross_ratio,
    line_conic_intersection,
    meet,
    normalize,
    point_position,
)

ABSOLUTE_TOL = 1e-13
REALITY_TOL = 1e-9


@dataclass(frozen=True)
class MeasureConstants:
    """Constants ``c`` (points) and ``c_prime`` (angles) scaling the logarithms."""

    c: complex
    c_prime: complex

    def __post_init__(self):
        c, cp = complex(self.c), complex(self.c_prime)
        if c == 0 or cp == 0:
            raise ValueError("measure constants must be nonzero")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c_prime", cp)

    @property
    def pencil_total(self):
        """Angle measure of a full pencil of lines, ``2*pi*|c_prime|``."""
        return 2 * math.pi * abs(self.c_prime)


class OmegaValues(NamedTuple):
    omega_xx: complex
    omega_yy: complex
    omega_xy: complex


@dataclass(frozen=True)
class ParabolicScale:
    scale: float = 1.0

    def __post_init__(self):
        s = float(self.scale)
        if not (s > 0 and math.isfinite(s)):
            raise ValueError("parabolic scale must be positive and finite")
        object.__setattr__(self, "scale", s)


def _bilinear(a, x, y):
    return np.einsum("...i,ij,...j->...", x, a, y)


def omega_form(conic, x, y):
    """Values of the conic's bilinear form on ``(x, x)``, ``(y, y)``, ``(x, y)``.

    ``conic`` may be a conic or a bare matrix, ``x`` and ``y`` points or
    coordinate arrays.
    """
    a = np.asarray(getattr(conic, "coeffs", conic))
    xv = np.asarray(getattr(x, "coords", x))
    yv = np.asarray(getattr(y, "coords", y))
    return OmegaValues(
        complex(_bilinear(a, xv, xv)),
        complex(_bilinear(a, yv, yv)),
        complex(_bilinear(a, xv, yv)),
    )


def log_ratio(a, x, y):
    """``log((Wxy + s) / (Wxy - s))`` with ``s = sqrt(Wxy**2 - Wxx*Wyy)``, vectorised.

    ``x`` and ``y`` are arrays of coordinate triples (last axis). The radicand
    is taken from the dual form on ``x cross y`` and small ratios go through
    ``2*atanh(s/Wxy)`` so that nearby points keep full relative accuracy.
    """
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    wxy = _bilinear(a, x, y)
    w = np.cross(x, y)
    disc = -_bilinear(adjugate(a), w, w)
    s = np.sqrt(disc.astype(complex))
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.abs(s) < 0.5 * np.abs(wxy)
        near = 2 * np.arctanh(np.where(small, s / np.where(small, wxy, 1), 0))
        far = np.log(np.where(small, 1, (wxy + s) / np.where(small, 1, wxy - s)))
    return np.where(small, near, far)


def _real_measure(value, what):
    if abs(value.imag) > REALITY_TOL * max(1.0, abs(value)):
        raise PointNotAdmissible(f"{what} is not real for these constants (value {value})")
    return abs(value.real)


def _check_points(conic, x, y):
    kind = classify_conic(conic)
    if kind not in (ConicClass.RealNondegenerate, ConicClass.ImaginaryNondegenerate):
        raise DegenerateConic("distance forms need a nondegenerate conic")
    xr, yr = x.real(), y.real()
    a = conic.scaled()
    for p, v in ((x, xr), (y, yr)):
        if abs(v @ a @ v) <= ABSOLUTE_TOL:
            raise OnAbsolute(f"{p!r} lies on the absolute")
        if kind is ConicClass.RealNondegenerate:
            pos = point_position(conic, p)
            if pos is PointPosition.OnConic:
                raise OnAbsolute(f"{p!r} lies on the absolute")
            if pos is PointPosition.Exterior:
                raise PointNotAdmissible(f"{p!r} lies outside the absolute")
    return normalize(xr).real, normalize(yr).real, a


def distance_log_form(conic, k, x, y):
    """Distance as ``c`` times the log of the cross-ratio with the absolute."""
    xv, yv, a = _check_points(conic, x, y)
    value = k.c * complex(log_ratio(a, xv, yv))
    return _real_measure(value, "distance")


def _cosine(a, xv, yv):
    wxx, wyy, wxy = omega_form(a, xv, yv)
    cos = wxy / cmath.sqrt(wxx * wyy)
    # representatives are defined up to sign; take the one with Re(cos) >= 0
    return -cos if cos.real < 0 else cos


def distance_arccos_form(conic, k, x, y):
    """Distance as ``2ic * arccos(Wxy / sqrt(Wxx*Wyy))``."""
    xv, yv, a = _check_points(conic, x, y)
    theta = cmath.acos(_cosine(a, xv, yv))
    return _real_measure(2j * k.c * theta, "distance")


def distance_arcsin_form(conic, k, x, y):
    """Distance as ``2ic * arcsin(sqrt(Wxx*Wyy - Wxy**2) / sqrt(Wxx*Wyy))``."""
    xv, yv, a = _check_points(conic, x, y)
    wxx, wyy, _ = omega_form(a, xv, yv)
    w = np.cross(xv, yv)
    gram = complex(w @ adjugate(a) @ w)  # Wxx*Wyy - Wxy**2
    sine = cmath.sqrt(gram) / cmath.sqrt(wxx * wyy)
    return _real_measure(2j * k.c * cmath.asin(sine), "distance")


def angle_measure(dual, k, u, v):
    """Angle between two real lines using the line-coordinate form of the absolute.

    Lines are unoriented, so the result is reduced modulo the measure of a
    full pencil and folded to the smaller of the two supplementary angles.
    """
    a = np.asarray(dual.coeffs, dtype=float)
    eig = np.linalg.eigvalsh(a)
    if np.sum(np.abs(eig) > 1e-10 * np.max(np.abs(eig))) < 2:
        raise DegenerateDual("dual conic has rank below two")
    a = a / np.max(np.abs(a))
    uv, vv = normalize(u.real()).real, normalize(v.real()).real
    if abs(uv @ a @ uv) <= ABSOLUTE_TOL or abs(vv @ a @ vv) <= ABSOLUTE_TOL:
        raise DegenerateDual("a line is tangent to the absolute; angle undefined")
    value = _real_measure(k.c_prime * complex(log_ratio(a, uv, vv)), "angle")
    total = k.pencil_total
    r = math.fmod(value, total)
    return min(r, total - r)


def laguerre_angle(u, v):
    """Euclidean angle between lines as ``log CR(u, v; I, J) / 2i``.

    ``I`` and ``J`` are the lines joining the meet of ``u`` and ``v`` to the
    circular points ``(1, +-i, 0)``. Result folded into ``[0, pi/2]``.
    """
    if u.same_as(v):
        return 0.0
    p = meet(u, v)
    if abs(p.normalized()[2]) <= 1e-14:
        return 0.0
    iso = [HomLine(np.cross(p.coords, c.coords)) for c in CIRCULAR_POINTS]
    theta = cmath.log(cross_ratio(u, v, *iso)) / 2j
    r = math.fmod(abs(theta.real), math.pi)
    return min(r, math.pi - r)


def parabolic_distance(s, x, y):
    """Scaled Euclidean distance between two finite points."""
    for p in (x, y):
        if not p.is_finite:
            raise PointAtInfinity(f"{p!r} is at infinity")
    return s.scale * float(np.linalg.norm(x.to_affine() - y.to_affine()))


def subdivision_measure(lam, z, z1, n):
    """Measure of the pair ``(z1, z)`` by counting ``lam**(1/n)`` steps.

    The fundamental points are 0 and infinity. Subdivision marks are
    ``z1 * lam**(k/n)``; the result is the number of whole steps from ``z1``
    towards ``z`` plus the linearly interpolated fraction of the last step,
    all divided by ``n``.
    """
    lam = float(lam)
    if not (lam > 0 and math.isfinite(lam)) or lam == 1:
        raise InvalidLambda(f"lambda must be positive and different from 1, got {lam}")
    if not (z > 0 and z1 > 0):
        raise ValueError("points must lie strictly between the fundamental points 0 and oo")
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    if z == z1:
        return 0.0
    if lam < 1:
        return -subdivision_measure(1 / lam, z, z1, n)
    if z < z1:
        return -subdivision_measure(lam, z1, z, n)

    def mark(step):
        return z1 * lam ** (step / n)

    hi = 1
    while mark(hi) <= z:
        hi *= 2
    lo = hi // 2 if hi > 1 else 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mark(mid) <= z:
            lo = mid
        else:
            hi = mid
    left, right = mark(lo), mark(lo + 1)
    return (lo + (z - left) / (right - left)) / n


def model_coordinates(conic, x, y):
    """Coordinates of ``x`` and ``y`` on their line with the absolute points sent to 0 and oo.

    With ``a, b`` the intersections of line ``xy`` with the conic, a point
    ``alpha*a + beta*b`` gets coordinate ``beta/alpha``; then
    ``CR(x, y; a, b) = z_x / z_y``.
    """
    a, b = line_conic_intersection(conic, x, y)
    basis = np.column_stack([a.normalized(), b.normalized()])
    out = []
    for p in (x, y):
        (alpha, beta), *_ = np.linalg.lstsq(basis, p.normalized(), rcond=None)
        out.append(complex(beta / alpha))
    return out[0], out[1]


def absolute_points(conic, x, y):
    """Intersections of line ``xy`` with the conic (the fundamental points)."""
    return line_conic_intersection(conic, x, y)
