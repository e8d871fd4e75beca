"""Randomized property suites behind ``cayleyklein verify``.

Every property draws from its own generator seeded by ``(seed, index)`` so
suites give the same report whether run alone or as part of ``all``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable
from typing import NamedTuple

import numpy as np

from cayleyklein import hilbert, measure, quadric, transitional
from cayleyklein.errors import GeometryError, UnknownSuite
from cayleyklein.geometries import (
    GeometryKind,
    hyperbolic_translation,
    make_elliptic,
    make_euclidean,
    make_hyperbolic,
    rotation,
)
from cayleyklein.measure import MeasureConstants
from cayleyklein.projective import (
    Collineation,
    Conic,
    HomPoint,
    apply_collineation,
    classify_conic,
    cross_ratio,
    line_conic_intersection,
    polar,
    pole,
)


class CheckResult(NamedTuple):
    suite: str
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.suite}.{self.name}: {self.detail}"


# samplers ---------------------------------------------------------------------


def disk_point(rng, rmax=0.95):
    r = rmax * math.sqrt(rng.uniform())
    t = rng.uniform(0, 2 * math.pi)
    return HomPoint(r * math.cos(t), r * math.sin(t), 1.0)


def sphere_vector(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def elliptic_point(rng):
    return HomPoint(sphere_vector(rng))


def plane_point(rng, scale=5.0):
    return HomPoint(*rng.uniform(-scale, scale, size=2), 1.0)


def random_collineation(rng):
    while True:
        m = rng.normal(size=(3, 3))
        if np.linalg.cond(m) < 1e3:
            return Collineation(m)


def sample_point(kind, rng):
    if kind is GeometryKind.Hyperbolic:
        return disk_point(rng)
    if kind is GeometryKind.Elliptic:
        return elliptic_point(rng)
    return plane_point(rng)


def _triangle_ok(g, pts):
    m = np.array([p.normalized().real for p in pts])
    return abs(np.linalg.det(m / np.linalg.norm(m, axis=1)[:, None])) > 1e-3


def random_triangle(g, rng):
    while True:
        pts = [sample_point(g.kind, rng) for _ in range(3)]
        if _triangle_ok(g, pts):
            return pts


def random_ellipse_conic(rng):
    a, b = rng.uniform(0.5, 2.0, size=2)
    t = rng.uniform(0, math.pi)
    cx, cy = rng.uniform(-1, 1, size=2)
    r = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    q = r @ np.diag([1 / a**2, 1 / b**2]) @ r.T
    ctr = np.array([cx, cy])
    m = np.zeros((3, 3))
    m[:2, :2] = q
    m[:2, 2] = m[2, :2] = -q @ ctr
    m[2, 2] = ctr @ q @ ctr - 1
    return Conic((m + m.T) / 2), (a, b, t, ctr)


def ellipse_interior_point(rng, params, rmax=0.95):
    a, b, t, ctr = params
    r = rmax * math.sqrt(rng.uniform())
    phi = rng.uniform(0, 2 * math.pi)
    local = np.array([a * r * math.cos(phi), b * r * math.sin(phi)])
    rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    return rot @ local + ctr


def random_polygon(rng, n=None):
    n = int(rng.integers(3, 12)) if n is None else n
    while True:
        ang = np.sort(rng.uniform(0, 2 * math.pi, size=n))
        gaps = np.diff(np.append(ang, ang[0] + 2 * math.pi))
        if np.min(gaps) > 0.05 and np.max(gaps) < math.pi - 0.05:
            break
    a, b = rng.uniform(0.5, 2.0, size=2)
    return hilbert.Polygon(np.column_stack([a * np.cos(ang), b * np.sin(ang)]))


def polygon_interior_point(rng, poly):
    w = rng.dirichlet(np.ones(len(poly.vertices)))
    return w @ poly.vertices


# core -------------------------------------------------------------------------


def check_cross_ratio_invariance(rng):
    worst = 0.0
    for _ in range(100):
        a, b = rng.normal(size=3), rng.normal(size=3)
        ts = rng.uniform(-3, 3, size=4)
        pts = [HomPoint(a + t * b) for t in ts]
        m = random_collineation(rng)
        before = cross_ratio(*pts)
        after = cross_ratio(*[apply_collineation(m, p) for p in pts])
        worst = max(worst, abs(after - before) / max(1.0, abs(before)))
    return worst <= 1e-9, worst


def check_cross_ratio_swap(rng):
    worst = 0.0
    for _ in range(100):
        a, b = rng.normal(size=3), rng.normal(size=3)
        x, y, p, q = (HomPoint(a + t * b) for t in rng.uniform(-3, 3, size=4))
        r = cross_ratio(x, y, p, q) * cross_ratio(x, y, q, p)
        worst = max(worst, abs(r - 1))
    return worst <= 1e-9, worst


def check_pole_polar(rng):
    worst = 0.0
    for _ in range(100):
        conic, _ = random_ellipse_conic(rng)
        p = HomPoint(rng.normal(size=3))
        back = pole(conic, polar(conic, p))
        worst = max(worst, float(np.max(np.abs(np.cross(back.normalized(), p.normalized())))))
    return worst <= 1e-9, worst


def check_intersections_on_conic(rng):
    worst = 0.0
    for _ in range(100):
        conic, _ = random_ellipse_conic(rng)
        p, q = HomPoint(rng.normal(size=3)), HomPoint(rng.normal(size=3))
        a = conic.scaled()
        for r in line_conic_intersection(conic, p, q):
            v = r.normalized()
            worst = max(worst, abs(v @ a @ v))
    return worst <= 1e-9, worst


def check_classification_invariance(rng):
    bad = 0
    for _ in range(50):
        for d in ([1, 1, -1], [1, 1, 1], [1, 1, 0], [1, -1, 0], [1, 0, 0]):
            m = random_collineation(rng)
            c = Conic(np.diag(np.asarray(d, dtype=float)))
            img = apply_collineation(m, c)
            bad += classify_conic(img) is not classify_conic(c)
    return bad == 0, bad


# measures ---------------------------------------------------------------------


def check_form_equivalence(rng):
    worst = 0.0
    forms = (measure.distance_log_form, measure.distance_arccos_form, measure.distance_arcsin_form)
    for g in (make_hyperbolic(), make_elliptic()):
        for _ in range(100):
            x, y = sample_point(g.kind, rng), sample_point(g.kind, rng)
            vals = [f(g.conic, g.constants, x, y) for f in forms]
            worst = max(worst, (max(vals) - min(vals)) / max(1.0, max(vals)))
    return worst <= 1e-10, worst


def check_subdivision(rng):
    worst = 0.0
    for lam in (1.5, 2.0, 10.0):
        for k in range(15):
            n = 2**k
            z1, z = np.exp(rng.uniform(-3, 3, size=2))
            exact = math.log(z / z1) / math.log(lam)
            err = abs(measure.subdivision_measure(lam, z, z1, n) - exact)
            worst = max(worst, err * n)
    return worst <= 1.0, f"max n*err={worst:.3e}"


def check_metric_axioms(rng):
    worst = 0.0
    for g in (make_hyperbolic(), make_elliptic(), make_euclidean()):
        for _ in range(100):
            x, y, z = (sample_point(g.kind, rng) for _ in range(3))
            dxy, dyx = g.dist(x, y), g.dist(y, x)
            worst = max(worst, abs(dxy - dyx), g.dist(x, x))
            if dxy < 0:
                return False, dxy
            worst = max(worst, dxy - g.dist(x, z) - g.dist(z, y))
    return worst <= 1e-9, worst


def check_model_coordinates(rng):
    g = make_hyperbolic()
    worst = 0.0
    for _ in range(100):
        x, y = disk_point(rng), disk_point(rng)
        zx, zy = measure.model_coordinates(g.conic, x, y)
        d = abs((g.constants.c * np.log(zx / zy)).real)
        worst = max(worst, abs(d - g.dist(x, y)))
    return worst <= 1e-9, worst


# geometries -------------------------------------------------------------------


def check_angle_sums(rng):
    worst = math.inf
    for g, sign in ((make_hyperbolic(), -1), (make_elliptic(), 1)):
        for _ in range(200):
            s = g.triangle_angle_sum(*random_triangle(g, rng))
            worst = min(worst, sign * (s - math.pi))
    flat = 0.0
    g = make_euclidean()
    for _ in range(200):
        flat = max(flat, abs(g.triangle_angle_sum(*random_triangle(g, rng)) - math.pi))
    return worst > 1e-6 and flat <= 1e-9, f"min |excess|={worst:.3e} flat={flat:.3e}"


def check_trig_transfer(rng):
    worst = 0.0
    for g in (make_hyperbolic(), make_elliptic()):
        for _ in range(200):
            worst = max(worst, max(g.trig_check(*random_triangle(g, rng))))
    return worst <= 1e-8, worst


def check_duality(rng):
    g = make_elliptic()
    worst = 0.0
    for _ in range(100):
        d, a = g.dual_distance_check(elliptic_point(rng), elliptic_point(rng))
        worst = max(worst, abs(d - a))
    return worst <= 1e-9, worst


def check_geodesic_additivity(rng):
    worst = 0.0
    for g in (make_hyperbolic(), make_elliptic(), make_euclidean()):
        for _ in range(100):
            x, y = sample_point(g.kind, rng), sample_point(g.kind, rng)
            t = rng.uniform()
            seg = g.segment(x, y)
            m = seg.point(t)
            d = seg.length
            worst = max(worst, abs(g.dist(x, m) + g.dist(m, y) - d), abs(g.dist(x, m) - t * d))
    return worst <= 1e-9, worst


def _random_isometry(g, rng):
    if g.kind is GeometryKind.Hyperbolic:
        return rotation(rng.uniform(0, 2 * math.pi)) @ hyperbolic_translation(rng.uniform(-1, 1))
    if g.kind is GeometryKind.Elliptic:
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        return Collineation(q)
    tx, ty = rng.uniform(-3, 3, size=2)
    return Collineation([[1, 0, tx], [0, 1, ty], [0, 0, 1]]) @ rotation(rng.uniform(0, 2 * math.pi))


def check_isometry_invariance(rng):
    worst = 0.0
    for g in (make_hyperbolic(), make_elliptic(), make_euclidean()):
        for _ in range(100):
            m = _random_isometry(g, rng)
            if not g.is_isometry(m):
                return False, "generated map is not an isometry"
            x, y = sample_point(g.kind, rng), sample_point(g.kind, rng)
            if g.kind is GeometryKind.Hyperbolic:
                x, y = disk_point(rng, 0.5), disk_point(rng, 0.5)
            d = g.dist(apply_collineation(m, x), apply_collineation(m, y))
            worst = max(worst, abs(d - g.dist(x, y)))
    return worst <= 1e-9, worst


def check_spherical_formulas(rng):
    g = make_elliptic()
    err = abs(g.dist(HomPoint(1, 0, 0), HomPoint(0, 1, 0)) - math.pi / 2)
    cayley = MeasureConstants(-0.5j, 0.5j)
    for _ in range(100):
        x, y = sphere_vector(rng), sphere_vector(rng)
        d = measure.distance_log_form(g.conic, cayley, HomPoint(x), HomPoint(y))
        err = max(err, abs(d - math.acos(min(1.0, abs(float(x @ y))))))
    return err <= 1e-9, err


# transitional -----------------------------------------------------------------


def check_curvature_law(rng):
    o = HomPoint(0, 0, 1)
    got = [transitional.curvature_estimate(g, o, 0.01) for g in (make_hyperbolic(), make_elliptic())]
    flat = transitional.curvature_estimate(make_euclidean(), o, 0.01)
    ok = abs(got[0] + 1) <= 1e-3 and abs(got[1] - 1) <= 1e-3 and abs(flat) <= 1e-6
    return ok, f"K=({got[0]:.6f}, {got[1]:.6f}, {flat:.3e})"


def _tangent_errors(p, q, cs):
    base = make_euclidean()
    d0 = base.dist(p, q)
    out = []
    for c in cs:
        gh = transitional.tangent_hyperbolic_measure(base, p, c)
        ge = transitional.tangent_elliptic_measure(base, p, c)
        out.append(max(abs(gh.dist(p, q) - d0), abs(ge.dist(p, q) - d0)))
    return out


def check_transitional_limit(rng):
    far, order = 0.0, math.inf
    for _ in range(20):
        p = plane_point(rng, 1.0)
        ang, r = rng.uniform(0, 2 * math.pi), rng.uniform(0.2, 1.0)
        a = p.to_affine() + r * np.array([math.cos(ang), math.sin(ang)])
        q = HomPoint(a[0], a[1], 1.0)
        far = max(far, _tangent_errors(p, q, [1e6])[0])
        errs = _tangent_errors(p, q, [1e2, 1e3, 1e4])
        order = min(order, math.log10(errs[0] / errs[1]), math.log10(errs[1] / errs[2]))
    return far <= 1e-9 and order >= 1.9, f"err(1e6)={far:.3e} order={order:.3f}"


def check_transit_monotone(rng):
    q = HomPoint(*rng.uniform(0.2, 0.5, size=2), 1.0)
    rows = transitional.transit_sweep(transitional.TransitFamily(-1.0), q, np.linspace(-1, 1, 9), curvature=False)
    sums = [r.angle_sum for r in rows]
    flat = rows[4]
    ok = (
        all(b > a for a, b in itertools.pairwise(sums))
        and abs(flat.distance - make_euclidean().dist(HomPoint(0, 0, 1), q)) <= 1e-12
    )
    return ok, f"sums {sums[0]:.6f}..{sums[-1]:.6f}"


# quadric ----------------------------------------------------------------------


SPHERE = quadric.Quadric3.diagonal(1, 1, 1, -1)
TWO_SHEETED = quadric.Quadric3.diagonal(1, 1, -1, 1)
DE_SITTER = quadric.Quadric3.diagonal(1, 1, -1, -1)


def check_quadric_classes(rng):
    k = quadric.QuadricGeometryKind
    paraboloid = quadric.Quadric3([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -0.5], [0, 0, -0.5, 0]])
    cases = [(SPHERE, k.Spherical), (TWO_SHEETED, k.Hyperbolic), (DE_SITTER, k.DeSitter), (paraboloid, k.Euclidean)]
    bad = 0
    for q, want in cases:
        for _ in range(10):
            # random affine change of coordinates keeps the class
            m = np.eye(4)
            m[:3, :3] = random_collineation(rng).matrix.real
            m[:3, 3] = rng.normal(size=3)
            t = np.linalg.inv(m)
            img = t.T @ q.coeffs @ t
            bad += quadric.classify_quadric(quadric.Quadric3((img + img.T) / 2)) is not want
    return bad == 0, bad


def check_sphere_consistency(rng):
    worst = 0.0
    for _ in range(200):
        p = sphere_vector(rng)
        n1, n2 = np.cross(p, rng.normal(size=3)), np.cross(p, rng.normal(size=3))
        l1, l2 = quadric.QLine.diametral(SPHERE, n1), quadric.QLine.diametral(SPHERE, n2)
        c = abs(n1 @ n2) / (np.linalg.norm(n1) * np.linalg.norm(n2))
        worst = max(worst, abs(quadric.qangle(SPHERE, p, l1, l2) - math.acos(min(1.0, c))))
        p2 = sphere_vector(rng)
        arc = quadric.qarc_length(SPHERE, quadric.QLine.through(SPHERE, p, p2), p, p2)
        worst = max(worst, abs(arc - math.acos(max(-1.0, min(1.0, float(p @ p2))))))
    return worst <= 1e-8, worst


def _upper_sheet(x, y):
    return np.array([x, y, math.sqrt(1 + x * x + y * y)])


def check_two_sheeted_consistency(rng):
    g = make_hyperbolic()
    worst = 0.0
    for _ in range(100):
        a, b = _upper_sheet(*rng.normal(size=2)), _upper_sheet(*rng.normal(size=2))
        arc = quadric.qarc_length(TWO_SHEETED, quadric.QLine.through(TWO_SHEETED, a, b), a, b)
        worst = max(worst, abs(arc - g.dist(HomPoint(a), HomPoint(b))))
    return worst <= 1e-8, worst


def desitter_point(rng):
    s, phi = rng.uniform(-1.5, 1.5), rng.uniform(0, 2 * math.pi)
    return np.array([math.cosh(s) * math.cos(phi), math.cosh(s) * math.sin(phi), math.sinh(s)])


def check_null_rulings(rng):
    worst, bad = 0.0, 0
    for _ in range(100):
        p = desitter_point(rng)
        for d in quadric.generators_at(DE_SITTER, p):
            p2 = p + rng.uniform(0.2, 2.0) * d.real
            bad += not quadric.desitter_null_check(DE_SITTER, p, p2)
            worst = max(worst, quadric.qarc_length(DE_SITTER, quadric.QLine.through(DE_SITTER, p, p2), p, p2))
    return bad == 0 and worst <= 1e-9, f"misses={bad} max_len={worst:.3e}"


def check_line_kind_partition(rng):
    bad = 0
    for _ in range(1000):
        n = rng.normal(size=3)
        want = quadric.LineKind.FirstKind if n[2] ** 2 > n[0] ** 2 + n[1] ** 2 else quadric.LineKind.SecondKind
        bad += quadric.line_kind(DE_SITTER, quadric.QLine.diametral(DE_SITTER, n)) is not want
    return bad == 0, bad


def check_kind_invariance(rng):
    bad = 0
    syms = []
    for signs in np.ndindex(2, 2, 2):
        syms.append(np.diag([(-1.0) ** s for s in signs]))
    for phi in rng.uniform(0, 2 * math.pi, size=8):
        syms.append(rotation(phi).matrix.real)
    for _ in range(100):
        n = rng.normal(size=3)
        k0 = quadric.line_kind(DE_SITTER, quadric.QLine.diametral(DE_SITTER, n))
        for m in syms:
            img = np.linalg.solve(m.T, n)
            bad += quadric.line_kind(DE_SITTER, quadric.QLine.diametral(DE_SITTER, img)) is not k0
    return bad == 0, bad


# hilbert ----------------------------------------------------------------------


def check_hilbert_ellipse(rng):
    conic, params = random_ellipse_conic(rng)
    body, g = hilbert.Ellipse(conic), make_hyperbolic(conic)
    worst = 0.0
    for _ in range(500):
        x, y = ellipse_interior_point(rng, params), ellipse_interior_point(rng, params)
        d = g.dist(HomPoint(x[0], x[1], 1.0), HomPoint(y[0], y[1], 1.0))
        worst = max(worst, abs(hilbert.hilbert_distance(body, x, y) - d))
    return worst <= 1e-10, worst


def check_hilbert_triangle(rng):
    worst = -math.inf
    for _ in range(1000):
        poly = random_polygon(rng)
        x, y, z = (polygon_interior_point(rng, poly) for _ in range(3))
        d = hilbert.hilbert_distance
        worst = max(worst, d(poly, x, y) - d(poly, x, z) - d(poly, z, y))
    return worst <= 1e-9, f"min slack={-worst:.3e}"


def check_hilbert_projective(rng):
    worst = 0.0
    done = 0
    while done < 100:
        if done % 2:
            body = random_polygon(rng)
            x, y = polygon_interior_point(rng, body), polygon_interior_point(rng, body)
        else:
            conic, params = random_ellipse_conic(rng)
            body = hilbert.Ellipse(conic)
            x, y = ellipse_interior_point(rng, params), ellipse_interior_point(rng, params)
        m = np.eye(3) + 0.1 * rng.normal(size=(3, 3))
        try:
            img = body.transform(m)
        except GeometryError:
            continue

        def image(p, m=m):
            h = m @ np.append(p, 1.0)
            return h[:2] / h[2]

        d0 = hilbert.hilbert_distance(body, x, y)
        worst = max(worst, abs(hilbert.hilbert_distance(img, image(x), image(y)) - d0))
        done += 1
    return worst <= 1e-9, worst


SUITES: dict[str, list[tuple[str, Callable]]] = {
    "core": [
        ("cross_ratio_projective_invariance", check_cross_ratio_invariance),
        ("cross_ratio_swap_inverse", check_cross_ratio_swap),
        ("pole_polar_inverse", check_pole_polar),
        ("intersections_on_conic", check_intersections_on_conic),
        ("classification_invariance", check_classification_invariance),
    ],
    "measures": [
        ("form_equivalence", check_form_equivalence),
        ("subdivision_convergence", check_subdivision),
        ("metric_axioms", check_metric_axioms),
        ("model_coordinates", check_model_coordinates),
    ],
    "geometries": [
        ("angle_sum_trichotomy", check_angle_sums),
        ("trigonometric_transfer", check_trig_transfer),
        ("duality", check_duality),
        ("geodesic_additivity", check_geodesic_additivity),
        ("isometry_invariance", check_isometry_invariance),
        ("spherical_formulas", check_spherical_formulas),
    ],
    "transitional": [
        ("curvature_law", check_curvature_law),
        ("transitional_limit", check_transitional_limit),
        ("angle_sum_monotone", check_transit_monotone),
    ],
    "quadric": [
        ("classification", check_quadric_classes),
        ("sphere_consistency", check_sphere_consistency),
        ("two_sheeted_consistency", check_two_sheeted_consistency),
        ("desitter_null_rulings", check_null_rulings),
        ("line_kind_partition", check_line_kind_partition),
        ("kind_invariance", check_kind_invariance),
    ],
    "hilbert": [
        ("ellipse_specialization", check_hilbert_ellipse),
        ("polygon_triangle_inequality", check_hilbert_triangle),
        ("projective_invariance", check_hilbert_projective),
    ],
}
SUITE_NAMES = (*SUITES, "all")


def _detail(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return f"failures={value}"
    return f"max_err={float(value):.3e}"


def run_suite(name, seed=0):
    """Run a suite (or ``all``) and return one :class:`CheckResult` per property."""
    if name not in SUITE_NAMES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        for i, (prop, fn) in enumerate(SUITES[suite]):
            rng = np.random.default_rng([int(seed), list(SUITES).index(suite), i])
            try:
                ok, value = fn(rng)
                results.append(CheckResult(suite, prop, bool(ok), _detail(value)))
            except (GeometryError, ArithmeticError, ValueError) as exc:
                results.append(CheckResult(suite, prop, False, f"{type(exc).__name__}: {exc}"))
    return results
