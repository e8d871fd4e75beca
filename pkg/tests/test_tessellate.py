import itertools
import math

import numpy as np
import pytest

from cayleyklein.errors import BadSchlafli, ParseError
from cayleyklein.geometries import make_hyperbolic
from cayleyklein.projective import HomPoint
from cayleyklein.tessellate import central_polygon, render_svg, tessellate, tile_count


def _orbit_count(p, q, depth):
    """Distinct images of the centre under all reflection words of length <= depth."""
    from cayleyklein.geometries import reflection
    from cayleyklein.projective import Conic, HomLine

    disk = Conic(np.diag([1.0, 1.0, -1.0]))
    v = central_polygon(p, q)
    gens = [reflection(disk, HomLine(np.cross(a, b))).matrix.real for a, b in zip(v, np.roll(v, -1, axis=0))]
    seen = set()
    for k in range(depth + 1):
        for word in itertools.product(range(p), repeat=k):
            m = np.eye(3)
            for i in word:
                m = m @ gens[i]
            c = m @ [0.0, 0.0, 1.0]
            seen.add(tuple(np.round(c[:2] / c[2], 8)))
    return len(seen)


def test_central_polygon_angles():
    p, q = 7, 3
    v = central_polygon(p, q)
    g = make_hyperbolic()
    pts = [HomPoint(x) for x in v]
    # interior angle at a vertex is 2 pi / q
    assert g.vertex_angle(pts[1], pts[0], pts[2]) == pytest.approx(2 * math.pi / q, abs=1e-12)


@pytest.mark.parametrize("p,q,depth", [(7, 3, 2), (4, 5, 2), (3, 7, 3), (5, 4, 2)])
def test_tile_count_matches_word_orbit(p, q, depth):
    assert tile_count(p, q, depth) == _orbit_count(p, q, depth)


def test_known_counts():
    assert [tile_count(7, 3, d) for d in range(3)] == [1, 8, 29]


def test_bad_inputs():
    with pytest.raises(BadSchlafli):
        tessellate(4, 4, 1)
    with pytest.raises(BadSchlafli):
        tessellate(6, 3, 1)
    with pytest.raises(ParseError):
        tessellate(7, 3, 9)


def test_svg_is_deterministic_and_well_formed():
    a = render_svg(tessellate(7, 3, 2))
    b = render_svg(tessellate(7, 3, 2))
    assert a == b
    assert a.count("<polygon") == 29
    assert 'viewBox="0 0 1000 1000"' in a
    assert '<circle cx="500.000000" cy="500.000000" r="475.000000"' in a
    import xml.etree.ElementTree as ET

    ET.fromstring(a.split("\n", 1)[1])
