"""Scene files: a geometry plus named points, lines, convex bodies and quadrics.

The format is YAML restricted to mappings, lists, numbers and strings.
Complex numbers are written as strings Python's ``complex`` accepts, such
as ``"0.5j"`` or ``"(1-2j)"``. See the README for the grammar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import yaml

from cayleyklein.errors import GeometryError, ParseError
from cayleyklein.geometries import CKGeometry, GeometryKind, make_euclidean
from cayleyklein.hilbert import Ellipse, Polygon
from cayleyklein.measure import MeasureConstants
from cayleyklein.projective import Conic, HomLine, HomPoint
from cayleyklein.quadric import Quadric3

_SECTIONS = ("geometry", "points", "lines", "bodies", "quadrics")
_KINDS = {"hyperbolic": GeometryKind.Hyperbolic, "elliptic": GeometryKind.Elliptic, "parabolic": GeometryKind.Parabolic}
_DEFAULT_C = {"hyperbolic": (0.5, 0.5j), "elliptic": (0.5j, 0.5j)}


def parse_number(value, where, allow_complex=True):
    """A finite real scalar, or a complex one written as a string such as ``"0.5j"``."""
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        z = complex(value)
    elif isinstance(value, str):
        try:
            z = complex(value.replace(" ", ""))
        except ValueError:
            raise ParseError(f"{where}: cannot read {value!r} as a number") from None
    else:
        raise ParseError(f"{where}: expected a number, got {value!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParseError(f"{where}: value must be finite")
    if z.imag == 0:
        return z.real
    if not allow_complex:
        raise ParseError(f"{where}: expected a real number, got {value!r}")
    return z


def _vector(value, n, where, allow_complex=True):
    if not isinstance(value, list) or len(value) != n:
        raise ParseError(f"{where}: expected a list of {n} numbers")
    return [parse_number(v, f"{where}[{i}]", allow_complex) for i, v in enumerate(value)]


def _matrix(value, n, where):
    if not isinstance(value, list) or len(value) != n:
        raise ParseError(f"{where}: expected a {n}x{n} matrix")
    rows = [_vector(r, n, f"{where}[{i}]", allow_complex=False) for i, r in enumerate(value)]
    a = np.array(rows, dtype=float)
    if not np.array_equal(a, a.T):
        raise ParseError(f"{where}: matrix must be symmetric")
    return a


def _encode(z):
    z = complex(z)
    return z.real if z.imag == 0 else str(z)


@dataclass
class GeometrySpec:
    kind: str
    conic: np.ndarray | None = None
    c: complex | None = None
    c_prime: complex | None = None
    scale: float = 1.0

    def build(self):
        if self.kind == "parabolic":
            return make_euclidean(self.scale)
        c0, cp0 = _DEFAULT_C[self.kind]
        c = c0 if self.c is None else self.c
        cp = cp0 if self.c_prime is None else self.c_prime
        conic = Conic(self.conic)
        try:
            return CKGeometry(conic, conic.dual(), MeasureConstants(c, cp), _KINDS[self.kind])
        except ValueError as exc:
            raise ParseError(f"geometry: {exc}") from None

    def to_dict(self):
        out = {"kind": self.kind}
        if self.conic is not None:
            out["conic"] = np.asarray(self.conic, dtype=float).tolist()
        if self.c is not None:
            out["c"] = _encode(self.c)
        if self.c_prime is not None:
            out["c_prime"] = _encode(self.c_prime)
        if self.kind == "parabolic":
            out["scale"] = float(self.scale)
        return out


@dataclass
class Scene:
    geometry_spec: GeometrySpec | None = None
    points: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)
    bodies: dict = field(default_factory=dict)
    quadrics: dict = field(default_factory=dict)
    _body_specs: dict = field(default_factory=dict, repr=False)

    @property
    def geometry(self):
        if self.geometry_spec is None:
            raise ParseError("scene has no geometry section")
        return self.geometry_spec.build()

    def point(self, name):
        try:
            return self.points[name]
        except KeyError:
            raise ParseError(f"unknown point {name!r}") from None

    def line(self, name):
        try:
            return self.lines[name]
        except KeyError:
            raise ParseError(f"unknown line {name!r}") from None

    def body(self, name):
        try:
            return self.bodies[name]
        except KeyError:
            raise ParseError(f"unknown body {name!r}") from None

    def quadric(self, name):
        try:
            return self.quadrics[name]
        except KeyError:
            raise ParseError(f"unknown quadric {name!r}") from None

    def to_dict(self):
        out = {}
        if self.geometry_spec is not None:
            out["geometry"] = self.geometry_spec.to_dict()
        if self.points:
            out["points"] = {k: [_encode(z) for z in v.coords] for k, v in self.points.items()}
        if self.lines:
            out["lines"] = {k: [_encode(z) for z in v.coords] for k, v in self.lines.items()}
        if self._body_specs:
            out["bodies"] = self._body_specs
        if self.quadrics:
            out["quadrics"] = {k: q.coeffs.tolist() for k, q in self.quadrics.items()}
        return out


def _parse_geometry(raw):
    if not isinstance(raw, dict):
        raise ParseError("geometry: expected a mapping")
    unknown = set(raw) - {"kind", "conic", "c", "c_prime", "scale"}
    if unknown:
        raise ParseError(f"geometry: unknown keys {sorted(unknown)}")
    kind = raw.get("kind")
    if kind not in _KINDS:
        raise ParseError(f"geometry.kind must be one of {sorted(_KINDS)}, got {kind!r}")
    spec = GeometrySpec(kind)
    if kind == "parabolic":
        if "scale" in raw:
            spec.scale = parse_number(raw["scale"], "geometry.scale", allow_complex=False)
            if not spec.scale > 0:
                raise ParseError("geometry.scale must be positive")
        return spec
    if "conic" in raw:
        spec.conic = _matrix(raw["conic"], 3, "geometry.conic")
    else:
        spec.conic = np.diag([1.0, 1.0, -1.0] if kind == "hyperbolic" else [1.0, 1.0, 1.0])
    for key in ("c", "c_prime"):
        if key in raw:
            z = complex(parse_number(raw[key], f"geometry.{key}"))
            if z == 0:
                raise ParseError(f"geometry.{key} must be nonzero")
            setattr(spec, key, z)
    return spec


def _named(raw, section):
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ParseError(f"{section}: expected a mapping of names")
    for name in raw:
        if not isinstance(name, str):
            raise ParseError(f"{section}: names must be strings, got {name!r}")
    return raw


def _parse_body(name, raw):
    where = f"bodies.{name}"
    if not isinstance(raw, dict) or len(raw) != 1:
        raise ParseError(f"{where}: expected exactly one of 'ellipse' or 'polygon'")
    ((kind, value),) = raw.items()
    try:
        if kind == "ellipse":
            return Ellipse(Conic(_matrix(value, 3, f"{where}.ellipse")))
        if kind == "polygon":
            if not isinstance(value, list) or len(value) < 3:
                raise ParseError(f"{where}.polygon: expected at least three vertices")
            verts = [_vector(v, 2, f"{where}.polygon[{i}]", allow_complex=False) for i, v in enumerate(value)]
            return Polygon(verts)
    except (ValueError, GeometryError) as exc:
        raise ParseError(f"{where}: {exc}") from None
    raise ParseError(f"{where}: unknown body type {kind!r}")


def scene_from_dict(data):
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ParseError("scene must be a mapping")
    unknown = set(data) - set(_SECTIONS)
    if unknown:
        raise ParseError(f"unknown scene sections {sorted(unknown)}")
    scene = Scene()
    if "geometry" in data:
        scene.geometry_spec = _parse_geometry(data["geometry"])
    try:
        for name, v in _named(data.get("points"), "points").items():
            scene.points[name] = HomPoint(_vector(v, 3, f"points.{name}"))
        for name, v in _named(data.get("lines"), "lines").items():
            scene.lines[name] = HomLine(_vector(v, 3, f"lines.{name}"))
        for name, v in _named(data.get("quadrics"), "quadrics").items():
            scene.quadrics[name] = Quadric3(_matrix(v, 4, f"quadrics.{name}"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    for name, v in _named(data.get("bodies"), "bodies").items():
        scene.bodies[name] = _parse_body(name, v)
        scene._body_specs[name] = v
    return scene


def loads(text):
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed scene: {exc}") from None
    return scene_from_dict(data)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read scene {path}: {exc.strerror}") from None
    return loads(text)


def dumps(scene):
    return yaml.safe_dump(scene.to_dict(), sort_keys=False, default_flow_style=None)


def dump(scene, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(scene))
