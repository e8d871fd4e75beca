"""Acceptance criteria, one test per criterion.

Each test prints a ``PASS``/``FAIL criterion N: ...`` line. Run this file
directly (``python tests/test_acceptance.py``) to get just those lines.
"""

import math
import sys
import time
import timeit

import numpy as np
import pytest

from cayleyklein import measure, quadric, transitional
from cayleyklein.geometries import make_elliptic, make_euclidean, make_hyperbolic
from cayleyklein.hilbert import Ellipse, hilbert_distance
from cayleyklein.measure import MeasureConstants
from cayleyklein.projective import HomPoint
from cayleyklein.verify import (
    DE_SITTER,
    desitter_point,
    elliptic_point,
    plane_point,
    random_triangle,
    run_suite,
    sphere_vector,
)

O = HomPoint(0, 0, 1)


def _fastest(fn, number=200):
    return min(timeit.repeat(fn, number=number, repeat=5)) / number


def criterion_1():
    g = make_hyperbolic()
    p = HomPoint(0.5, 0, 1)
    want = math.atanh(0.5)
    disk = Ellipse.unit_disk()
    calls = {
        "log": lambda: measure.distance_log_form(g.conic, g.constants, O, p),
        "arccos": lambda: measure.distance_arccos_form(g.conic, g.constants, O, p),
        "arcsin": lambda: measure.distance_arcsin_form(g.conic, g.constants, O, p),
        "hilbert": lambda: hilbert_distance(disk, [0.0, 0.0], [0.5, 0.0]),
    }
    err = max(abs(f() - want) for f in calls.values())
    slowest = max(_fastest(f) for f in calls.values())
    return err <= 1e-12 and slowest < 1e-3, f"max_err={err:.2e} slowest={slowest * 1e3:.3f} ms"


def criterion_2():
    start = time.perf_counter()
    k = [transitional.curvature_estimate(g, O, 0.01) for g in (make_hyperbolic(), make_elliptic(), make_euclidean())]
    took = time.perf_counter() - start
    ok = abs(k[0] + 1) <= 1e-3 and abs(k[1] - 1) <= 1e-3 and abs(k[2]) <= 1e-6 and took < 5
    return ok, f"K=({k[0]:.6f}, {k[1]:.6f}, {k[2]:.2e}) in {took:.2f} s"


def criterion_3():
    g = make_elliptic()
    err = abs(g.dist(HomPoint(1, 0, 0), HomPoint(0, 1, 0)) - math.pi / 2)
    cayley = MeasureConstants(-0.5j, 0.5j)
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(200):
        x, y = sphere_vector(rng), sphere_vector(rng)
        d = measure.distance_log_form(g.conic, cayley, HomPoint(x), HomPoint(y))
        worst = max(worst, abs(d - math.acos(min(1.0, abs(float(x @ y))))))
    return err <= 1e-12 and worst <= 1e-12, f"quarter_err={err:.2e} cayley_err={worst:.2e}"


def criterion_4():
    rng = np.random.default_rng(4)
    start = time.perf_counter()
    h, e, f = make_hyperbolic(), make_elliptic(), make_euclidean()
    hyp = max(h.triangle_angle_sum(*random_triangle(h, rng)) for _ in range(200))
    ell = min(e.triangle_angle_sum(*random_triangle(e, rng)) for _ in range(200))
    flat = max(abs(f.triangle_angle_sum(*random_triangle(f, rng)) - math.pi) for _ in range(200))
    took = time.perf_counter() - start
    ok = hyp < math.pi - 1e-6 and ell > math.pi + 1e-6 and flat <= 1e-9 and took < 10
    return ok, f"max_hyp-pi={hyp - math.pi:.2e} min_ell-pi={ell - math.pi:.2e} flat={flat:.2e} in {took:.2f} s"


def _tangent_error(p, q, c):
    base = make_euclidean()
    d0 = base.dist(p, q)
    gh = transitional.tangent_hyperbolic_measure(base, p, c)
    ge = transitional.tangent_elliptic_measure(base, p, c)
    return max(abs(gh.dist(p, q) - d0), abs(ge.dist(p, q) - d0))


def criterion_5():
    rng = np.random.default_rng(5)
    far, order = 0.0, math.inf
    for _ in range(50):
        p = plane_point(rng, 1.0)
        ang, r = rng.uniform(0, 2 * math.pi), rng.uniform(0.1, 1.0)
        a = p.to_affine() + r * np.array([math.cos(ang), math.sin(ang)])
        q = HomPoint(a[0], a[1], 1.0)
        far = max(far, _tangent_error(p, q, 1e6))
        errs = [_tangent_error(p, q, c) for c in (1e2, 1e3, 1e4)]
        order = min(order, math.log10(errs[0] / errs[1]), math.log10(errs[1] / errs[2]))
    return far <= 1e-9 and order >= 1.9, f"err(1e6)={far:.2e} min_order={order:.3f}"


def criterion_6():
    rng = np.random.default_rng(6)
    g = make_elliptic()
    worst = 0.0
    for _ in range(100):
        d, a = g.dual_distance_check(elliptic_point(rng), elliptic_point(rng))
        worst = max(worst, abs(d - a))
    return worst <= 1e-9, f"max_err={worst:.2e}"


def criterion_7():
    rng = np.random.default_rng(7)
    worst = {}
    for name, g in (("hyperbolic", make_hyperbolic()), ("spherical", make_elliptic())):
        worst[name] = max(max(g.trig_check(*random_triangle(g, rng))) for _ in range(200))
    return max(worst.values()) <= 1e-8, " ".join(f"{k}={v:.2e}" for k, v in worst.items())


def criterion_8():
    rng = np.random.default_rng(8)
    longest, pairs = 0.0, 0
    while pairs < 100:
        p = desitter_point(rng)
        d = quadric.generators_at(DE_SITTER, p)[pairs % 2].real
        p2 = p + rng.uniform(0.2, 2.0) * d
        longest = max(longest, quadric.qarc_length(DE_SITTER, quadric.QLine.through(DE_SITTER, p, p2), p, p2))
        pairs += 1
    wrong = 0
    for _ in range(1000):
        n = rng.normal(size=3)
        # the restricted form on the plane n.x = 0 is definite iff n is timelike
        want = quadric.LineKind.FirstKind if n[2] ** 2 > n[0] ** 2 + n[1] ** 2 else quadric.LineKind.SecondKind
        wrong += quadric.line_kind(DE_SITTER, quadric.QLine.diametral(DE_SITTER, n)) is not want
    return longest <= 1e-9 and wrong == 0, f"max_null_len={longest:.2e} misclassified={wrong}/1000"


def criterion_9():
    rng = np.random.default_rng(9)
    worst = 0.0
    for lam in (1.5, 2.0, 10.0):
        for k in range(15):
            n = 2**k
            z1, z = np.exp(rng.uniform(-3, 3, size=2))
            exact = math.log(z / z1) / math.log(lam)
            worst = max(worst, n * abs(measure.subdivision_measure(lam, z, z1, n) - exact))
    return worst <= 1.0, f"max n*err={worst:.3f} (n <= 2^14)"


REQUIRED = {
    ("core", "cross_ratio_projective_invariance"),
    ("measures", "metric_axioms"),
    ("geometries", "geodesic_additivity"),
    ("geometries", "isometry_invariance"),
    ("hilbert", "ellipse_specialization"),
}


def criterion_10():
    start = time.perf_counter()
    results = run_suite("all", seed=0)
    took = time.perf_counter() - start
    names = {(r.suite, r.name) for r in results}
    passed = sum(r.passed for r in results)
    ok = REQUIRED <= names and passed == len(results) and took < 60
    return ok, f"{passed}/{len(results)} properties in {took:.2f} s"


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def _report(n, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + _report(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(_report(i, ok, detail))
        status |= not ok
    sys.exit(status)
