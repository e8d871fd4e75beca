"""Command-line front end.

Exit status is 0 on success, 1 for usage and scene errors and 2 for
geometric errors; the error class name is printed on stderr.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from cayleyklein import hilbert, quadric, scene, tessellate, transitional, verify
from cayleyklein.errors import GeometryError, NotHyperbolic, ParseError
from cayleyklein.geometries import GeometryKind
from cayleyklein.projective import HomLine, HomPoint

CSV_HEADER = "kappa,distance,angle_sum,curvature"
BUILTIN_QUADRICS = {
    "sphere": (1, 1, 1, -1),
    "two-sheeted": (1, 1, -1, 1),
    "de-sitter": (1, 1, -1, -1),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _numbers(text, n, what, allow_complex=True):
    parts = text.split(",")
    if len(parts) not in n:
        raise ParseError(f"{what}: expected {' or '.join(map(str, n))} comma-separated numbers, got {text!r}")
    return [scene.parse_number(t.strip(), what, allow_complex) for t in parts]


class _Context:
    def __init__(self, args):
        self.args = args
        self.scene = scene.load(args.scene) if args.scene else scene.Scene()
        self.out = []

    def num(self, x):
        text = f"{x:.{self.args.precision}f}"
        # no negative zero after rounding
        return text[1:] if text.startswith("-") and not text.strip("-0.") else text

    def emit(self, line):
        self.out.append(line)

    def point(self, token):
        if token in self.scene.points:
            return self.scene.points[token]
        vals = _numbers(token, (2, 3), f"point {token!r}")
        if len(vals) == 2:
            vals.append(1.0)
        try:
            return HomPoint(vals)
        except ValueError as exc:
            raise ParseError(f"point {token!r}: {exc}") from None

    def affine(self, token):
        if token in self.scene.points:
            return self.scene.points[token].to_affine()
        vals = _numbers(token, (2,), f"point {token!r}", allow_complex=False)
        return np.array(vals, dtype=float)

    def line(self, token):
        if token in self.scene.lines:
            return self.scene.lines[token]
        try:
            return HomLine(_numbers(token, (3,), f"line {token!r}"))
        except ValueError as exc:
            raise ParseError(f"line {token!r}: {exc}") from None

    def vector3(self, token, what):
        if token is None:
            raise ParseError(f"{what} is required")
        return np.array(_numbers(token, (3,), what, allow_complex=False), dtype=float)


def cmd_dist(ctx, a):
    g = ctx.scene.geometry
    x, y = ctx.point(a.a), ctx.point(a.b)
    g.check_point(x)
    g.check_point(y)
    ctx.emit(ctx.num(g.dist(x, y)))


def cmd_angle(ctx, a):
    g = ctx.scene.geometry
    ctx.emit(ctx.num(g.angle(ctx.line(a.l), ctx.line(a.m))))


def cmd_geodesic(ctx, a):
    if a.steps < 1:
        raise ParseError("--steps must be at least 1")
    g = ctx.scene.geometry
    seg = g.segment(ctx.point(a.a), ctx.point(a.b))
    ctx.emit("t,x1,x2,x3")
    for i in range(a.steps + 1):
        t = i / a.steps
        v = seg.point(t).normalized().real
        if abs(v[2]) > 1e-12:
            v = v / v[2]
        else:
            v = v / np.linalg.norm(v)
        ctx.emit(",".join(ctx.num(z) for z in (t, *v)))


def cmd_tessellate(ctx, a):
    if ctx.scene.geometry_spec is not None and ctx.scene.geometry.kind is not GeometryKind.Hyperbolic:
        raise NotHyperbolic("tessellations are drawn in a hyperbolic scene")
    tiles = tessellate.tessellate(a.p, a.q, a.depth)
    ctx.emit(tessellate.render_svg(tiles).rstrip("\n"))


def _kappas(a):
    if not a.step > 0:
        raise ParseError("--step must be positive")
    span = (a.kappa_max - a.kappa_min) / a.step
    n = round(span)
    if span < 0 or abs(span - n) > 1e-9 * max(1.0, abs(span)):
        raise ParseError("kappa range must be a whole number of steps from --kappa-min to --kappa-max")
    return np.linspace(a.kappa_min, a.kappa_max, n + 1)


def cmd_transit(ctx, a):
    base = ctx.point(a.base)
    family = transitional.TransitFamily(-1.0, base)
    third = ctx.point(a.third) if a.third else None
    rows = transitional.transit_sweep(
        family, ctx.point(a.probe), _kappas(a), third=third, radius=a.radius, curvature=not a.no_curvature
    )
    ctx.emit(CSV_HEADER)
    for r in rows:
        ctx.emit(",".join(ctx.num(v) if math.isfinite(v) else "nan" for v in r))


def _quadric(ctx, name):
    if name in ctx.scene.quadrics:
        return ctx.scene.quadrics[name]
    if name in BUILTIN_QUADRICS:
        return quadric.Quadric3.diagonal(*BUILTIN_QUADRICS[name])
    raise ParseError(f"unknown quadric {name!r}")


def _complex_text(ctx, z):
    if abs(z.imag) <= 1e-15:
        return ctx.num(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{ctx.num(z.real)}{sign}{ctx.num(abs(z.imag))}j"


def _qline(ctx, q, plane, p1=None, p2=None):
    try:
        if plane is not None:
            return quadric.QLine(q, np.array(_numbers(plane, (4,), "--plane", allow_complex=False)))
        return quadric.QLine.through(q, p1, p2)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def cmd_quadric(ctx, a):
    q = _quadric(ctx, a.name)
    if a.action == "classify":
        ctx.emit(quadric.classify_quadric(q).name)
    elif a.action == "generators":
        for d in quadric.generators_at(q, ctx.vector3(a.at, "--at")):
            ctx.emit(",".join(_complex_text(ctx, z) for z in d))
    elif a.action == "length":
        p1, p2 = ctx.vector3(a.p1, "--p1"), ctx.vector3(a.p2, "--p2")
        ctx.emit(ctx.num(quadric.qarc_length(q, _qline(ctx, q, a.plane, p1, p2), p1, p2)))
    elif a.action == "angle":
        if a.plane is None or a.plane2 is None:
            raise ParseError("angle needs --plane and --plane2")
        l1, l2 = _qline(ctx, q, a.plane), _qline(ctx, q, a.plane2)
        ctx.emit(ctx.num(quadric.qangle(q, ctx.vector3(a.at, "--at"), l1, l2)))
    elif a.action == "kind":
        if a.plane is None:
            raise ParseError("kind needs --plane")
        ctx.emit(quadric.line_kind(q, _qline(ctx, q, a.plane)).name)
    else:
        null = quadric.desitter_null_check(q, ctx.vector3(a.p1, "--p1"), ctx.vector3(a.p2, "--p2"))
        ctx.emit("true" if null else "false")


def cmd_hilbert(ctx, a):
    body = ctx.scene.body(a.body)
    x, y = ctx.affine(a.a), ctx.affine(a.b)
    ctx.emit(ctx.num(hilbert.hilbert_distance(body, x, y)))
    if a.chord:
        for e in hilbert.chord_endpoints(body, x, y):
            ctx.emit(",".join(ctx.num(v) for v in e))


def cmd_verify(ctx, a):
    results = verify.run_suite(a.suite, ctx.args.seed)
    for r in results:
        ctx.emit(r.line())
    passed = sum(r.passed for r in results)
    ctx.emit(f"{passed}/{len(results)} properties passed")
    return 0 if passed == len(results) else 1


def _globals(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--scene", default=default, help="scene file (YAML)")
    parser.add_argument(
        "--precision",
        type=int,
        default=argparse.SUPPRESS if suppress else 12,
        help="decimal places in numeric output (default 12)",
    )
    parser.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS if suppress else 0, help="seed for randomized suites (default 0)"
    )
    parser.add_argument("--out", default=default, help="write output to this file instead of stdout")


def build_parser():
    parser = _Parser(prog="cayleyklein", description="Cayley-Klein projective measures and their relatives.")
    _globals(parser, suppress=False)
    common = _Parser(add_help=False)
    _globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dist", parents=[common], help="distance between two points")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("angle", parents=[common], help="angle between two lines")
    p.add_argument("l")
    p.add_argument("m")
    p.set_defaults(func=cmd_angle)

    p = sub.add_parser("geodesic", parents=[common], help="points along the segment from a to b")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("tessellate", parents=[common], help="SVG of the {p,q} tiling of the Klein disk")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_tessellate)

    p = sub.add_parser("transit", parents=[common], help="CSV sweep through the tangent measures")
    p.add_argument("--kappa-min", type=float, default=-1.0)
    p.add_argument("--kappa-max", type=float, default=1.0)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--base", default="0,0", help="basepoint (name or x,y)")
    p.add_argument("--probe", default="0.5,0", help="second probe vertex (name or x,y)")
    p.add_argument("--third", default=None, help="third vertex; default completes a right isosceles triangle")
    p.add_argument("--radius", type=float, default=0.01, help="geodesic circle radius for curvature")
    p.add_argument("--no-curvature", action="store_true")
    p.set_defaults(func=cmd_transit)

    p = sub.add_parser("quadric", parents=[common], help="geometry on a quadric surface")
    p.add_argument("name", help="scene quadric or one of: " + ", ".join(BUILTIN_QUADRICS))
    p.add_argument("action", choices=["classify", "generators", "length", "angle", "kind", "null"])
    p.add_argument("--at")
    p.add_argument("--p1")
    p.add_argument("--p2")
    p.add_argument("--plane", help="diametral plane a,b,c,d of a*x + b*y + c*z + d = 0")
    p.add_argument("--plane2")
    p.set_defaults(func=cmd_quadric)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert distance in a convex body")
    p.add_argument("body")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--chord", action="store_true", help="also print the chord endpoints")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("suite", help="one of: " + ", ".join(verify.SUITE_NAMES))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.precision < 0:
            raise ParseError("--precision must be nonnegative")
        if args.seed < 0:
            raise ParseError("--seed must be nonnegative")
        ctx = _Context(args)
        status = args.func(ctx, args) or 0
        text = "\n".join(ctx.out) + "\n"
        if args.out:
            try:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise ParseError(f"cannot write {args.out}: {exc.strerror}") from None
        else:
            sys.stdout.write(text)
        return status
    except ParseError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
