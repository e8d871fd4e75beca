import itertools
import math

import pytest

from cayleyklein.cli import CSV_HEADER, main

SCENE = """
geometry: {kind: hyperbolic}
points:
  o: [0, 0, 1]
  p: [0.5, 0, 1]
  edge: [1, 0, 1]
lines:
  x_axis: [0, 1, 0]
  y_axis: [1, 0, 0]
bodies:
  square: {polygon: [[-1, -1], [1, -1], [1, 1], [-1, 1]]}
"""


@pytest.fixture
def scene(tmp_path):
    path = tmp_path / "scene.yaml"
    path.write_text(SCENE)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dist(capsys, scene):
    assert run(capsys, "--scene", scene, "dist", "o", "p") == (0, "0.549306144334\n", "")
    assert run(capsys, "dist", "o", "o", "--scene", scene)[1] == "0.000000000000\n"
    assert run(capsys, "--scene", scene, "--precision", "4", "dist", "0,0", "0.5,0")[1] == "0.5493\n"


def test_dist_on_absolute_exits_2(capsys, scene):
    code, out, err = run(capsys, "--scene", scene, "dist", "o", "edge")
    assert code == 2 and out == ""
    assert err.startswith("error: OnAbsolute:")


def test_usage_errors_exit_1(capsys, scene):
    assert run(capsys, "dist", "o", "p")[0] == 1  # no scene geometry
    assert run(capsys, "--scene", scene, "dist", "o", "nowhere")[0] == 1
    assert run(capsys, "--scene", "/nonexistent.yaml", "dist", "o", "p")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 1 and "UnknownSuite" in err


def test_angle(capsys, scene):
    code, out, _ = run(capsys, "--scene", scene, "angle", "x_axis", "y_axis")
    assert code == 0 and float(out) == pytest.approx(math.pi / 2, abs=1e-12)


def test_geodesic(capsys, scene):
    code, out, _ = run(capsys, "--scene", scene, "geodesic", "o", "p", "--steps", "4")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "t,x1,x2,x3" and len(rows) == 6
    assert rows[1] == "0.000000000000,0.000000000000,0.000000000000,1.000000000000"
    assert rows[-1].startswith("1.000000000000,0.500000000000,0.000000000000")


def test_tessellate(capsys, scene, tmp_path):
    code, out, err = run(capsys, "tessellate", "4", "4")
    assert code == 2 and "BadSchlafli" in err
    code, out, _ = run(capsys, "tessellate", "7", "3", "--depth", "0")
    assert code == 0 and out.count("<polygon") == 1
    first = run(capsys, "--scene", scene, "tessellate", "5", "4", "--depth", "2")[1]
    assert first == run(capsys, "tessellate", "5", "4", "--depth", "2")[1]
    target = tmp_path / "t.svg"
    assert run(capsys, "tessellate", "7", "3", "--depth", "1", "--out", str(target)) == (0, "", "")
    assert target.read_text().count("<polygon") == 8
    assert run(capsys, "tessellate", "7", "3", "--depth", "9")[0] == 1


def test_tessellate_needs_hyperbolic_scene(capsys, tmp_path):
    path = tmp_path / "e.yaml"
    path.write_text("geometry: {kind: elliptic}\n")
    code, _, err = run(capsys, "--scene", str(path), "tessellate", "7", "3")
    assert code == 2 and "NotHyperbolic" in err


def test_transit(capsys):
    code, out, _ = run(capsys, "transit", "--kappa-min=-1", "--kappa-max=1", "--step=0.5")
    rows = out.splitlines()
    assert code == 0 and rows[0] == CSV_HEADER and len(rows) == 6
    table = [[float(v) for v in r.split(",")] for r in rows[1:]]
    assert [r[0] for r in table] == [-1, -0.5, 0, 0.5, 1]
    assert table[2][1] == pytest.approx(0.5, abs=1e-12)
    sums = [r[2] for r in table]
    assert all(b > a for a, b in itertools.pairwise(sums))
    assert table[0][3] == pytest.approx(-1, abs=1e-3)
    assert table[4][3] == pytest.approx(1, abs=1e-3)
    assert run(capsys, "transit", "--step=0.3")[0] == 1


def test_quadric(capsys):
    assert run(capsys, "quadric", "de-sitter", "classify")[1] == "DeSitter\n"
    code, out, _ = run(capsys, "quadric", "sphere", "length", "--p1", "1,0,0", "--p2", "0,1,0")
    assert code == 0 and float(out) == pytest.approx(math.pi / 2, abs=1e-12)
    assert run(capsys, "quadric", "de-sitter", "kind", "--plane", "1,0,0,0")[1] == "SecondKind\n"
    assert run(capsys, "quadric", "de-sitter", "null", "--p1", "1,0,0", "--p2", "1,1,1")[1] == "true\n"
    code, out, _ = run(
        capsys, "quadric", "sphere", "angle", "--at", "1,0,0", "--plane", "0,0,1,0", "--plane2", "0,1,0,0"
    )
    assert float(out) == pytest.approx(math.pi / 2, abs=1e-12)
    code, out, _ = run(capsys, "quadric", "de-sitter", "generators", "--at", "1,0,0")
    assert code == 0 and len(out.splitlines()) == 2
    assert run(capsys, "quadric", "sphere", "kind", "--plane", "0,0,1,0")[0] == 2
    assert run(capsys, "quadric", "sphere", "length", "--p1", "1,0,0", "--p2", "0,0,2")[0] == 2
    assert run(capsys, "quadric", "cube", "classify")[0] == 1


def test_hilbert(capsys, scene):
    code, out, _ = run(capsys, "--scene", scene, "hilbert", "square", "0,0", "0.5,0", "--chord")
    lines = out.splitlines()
    assert code == 0 and float(lines[0]) == pytest.approx(0.5 * math.log(3), abs=1e-12)
    assert lines[1:] == ["-1.000000000000,0.000000000000", "1.000000000000,0.000000000000"]
    assert run(capsys, "--scene", scene, "hilbert", "square", "0,0", "2,0")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "core", "--seed", "3")
    lines = out.splitlines()
    assert code == 0 and all(line.startswith("PASS core.") for line in lines[:-1])
    assert lines[-1] == f"{len(lines) - 1}/{len(lines) - 1} properties passed"
