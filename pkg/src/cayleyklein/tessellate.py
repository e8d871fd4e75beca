"""Regular {p, q} tilings of the Klein disk and their SVG rendering.

Tiles are generated breadth first by reflecting in tile edges: the tiles
at depth ``k`` are the images of the central polygon under words of length
``k`` in the edge reflections. Geodesics of the Klein model are straight
chords, so every tile is a Euclidean polygon.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from cayleyklein.errors import BadSchlafli, ParseError
from cayleyklein.geometries import reflection
from cayleyklein.projective import Conic, HomLine

MAX_DEPTH = 8
SVG_SIZE = 1000
SVG_RADIUS = 475.0
_DISK = Conic(np.diag([1.0, 1.0, -1.0]))
_LORENTZ = np.diag([1.0, 1.0, -1.0])
_CELL = 1e-5


def check_schlafli(p, q):
    if int(p) != p or int(q) != q or p < 3 or q < 3:
        raise BadSchlafli(f"{{{p},{q}}} needs integers p, q >= 3")
    if 1 / p + 1 / q >= 0.5:
        raise BadSchlafli(f"{{{p},{q}}} is not hyperbolic: 1/p + 1/q must be below 1/2")


def central_polygon(p, q):
    """Vertices (homogeneous, ``w = 1``) of the regular p-gon with vertex angle ``2 pi / q`` about the origin."""
    check_schlafli(p, q)
    cosh_r = 1 / (math.tan(math.pi / p) * math.tan(math.pi / q))
    rho = math.tanh(math.acosh(cosh_r))
    theta = 2 * math.pi * np.arange(p) / p
    return np.column_stack([rho * np.cos(theta), rho * np.sin(theta), np.ones(p)])


def _edge_reflections(verts):
    out = []
    for a, b in zip(verts, np.roll(verts, -1, axis=0)):
        out.append(reflection(_DISK, HomLine(np.cross(a, b))).matrix.real)
    return out


class _CentreIndex:
    """Set of hyperboloid points with a grid lookup tolerant to rounding."""

    def __init__(self):
        self._cells = {}

    def add(self, h):
        key = tuple(np.floor(h / _CELL).astype(np.int64))
        for off in itertools.product((-1, 0, 1), repeat=3):
            for other in self._cells.get(tuple(k + o for k, o in zip(key, off)), ()):
                if np.max(np.abs(other - h)) < _CELL:
                    return False
        self._cells.setdefault(key, []).append(h)
        return True


def tessellate(p, q, depth):
    """Tiles of ``{p, q}`` up to reflection depth ``depth`` as ``(p, 2)`` arrays of Klein coordinates.

    Order is breadth first, edges in counterclockwise order, so the output is
    deterministic.
    """
    check_schlafli(p, q)
    if int(depth) != depth or not 0 <= depth <= MAX_DEPTH:
        raise ParseError(f"depth must be an integer in [0, {MAX_DEPTH}], got {depth}")
    base = central_polygon(p, q)
    gens = _edge_reflections(base)
    index = _CentreIndex()
    origin = np.array([0.0, 0.0, 1.0])
    index.add(origin)
    tiles = [np.eye(3)]
    frontier = [np.eye(3)]
    for _ in range(int(depth)):
        nxt = []
        for m in frontier:
            for r in gens:
                w = m @ r
                h = w @ origin
                # keep the hyperboloid sheet with positive last coordinate
                h = h / math.sqrt(-(h @ _LORENTZ @ h)) * np.sign(h[2])
                if index.add(h):
                    nxt.append(w)
        tiles.extend(nxt)
        frontier = nxt
    out = []
    for m in tiles:
        v = base @ m.T
        out.append(v[:, :2] / v[:, 2:])
    return out


def tile_count(p, q, depth):
    return len(tessellate(p, q, depth))


def _fmt(x):
    return f"{x:.6f}"


def render_svg(tiles):
    """SVG 1.1 document: the absolute circle and one polygon per tile."""
    c = SVG_SIZE / 2
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_SIZE}" height="{SVG_SIZE}" '
            f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">'
        ),
        (
            f'<circle cx="{_fmt(c)}" cy="{_fmt(c)}" r="{_fmt(SVG_RADIUS)}" fill="none" stroke="black" '
            'stroke-width="1.500000"/>'
        ),
        '<g fill="none" stroke="steelblue" stroke-width="0.500000">',
    ]
    for tile in tiles:
        pts = " ".join(f"{_fmt(c + SVG_RADIUS * x)},{_fmt(c - SVG_RADIUS * y)}" for x, y in tile)
        lines.append(f'<polygon class="tile" points="{pts}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
