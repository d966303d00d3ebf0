import json
import math
import os
import pathlib
import subprocess

import pytest

import quermass as q

ROOT = pathlib.Path(__file__).resolve().parents[2]
CUBE = [[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)]


def test_version():
    assert q.__version__ == "0.1.0"


def test_cube_closed_forms():
    cube = q.convex_hull(CUBE + [[0.5, 0.5, 0.5]])
    assert len(cube) == 8
    assert cube.dim == 3
    assert cube.facet_count == 6
    assert cube.volume == pytest.approx(1.0)
    assert cube.centroid == pytest.approx([0.5, 0.5, 0.5])
    assert [q.quermassintegral(cube, i) for i in range(4)] == pytest.approx([1.0, 2.0, math.pi, 4 * math.pi / 3])
    assert cube.support([0.0, 0.0, 1.0]) == pytest.approx(1.0)


def test_box_mixed_volume():
    a = q.box([0, 0, 0], [1, 2, 3])
    b = q.box([0, 0, 0], [2, 1, 1])
    # permanent of [[1,2,3],[1,2,3],[2,1,1]] / 6
    assert q.mixed_volume([a, a, b]) == pytest.approx((2 * (1 * 2 * 1) + 2 * (1 * 3 * 1) + 2 * (2 * 3 * 2)) / 6)


def test_json_round_trip():
    k = q.random_body(3, 3, 1)
    back = q.from_json(k.to_json())
    assert back.vertices == k.vertices
    with pytest.raises(ValueError):
        q.from_json('{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1],[0.5,0.5]]}')


def test_degenerate_hull_raises():
    with pytest.raises(q.GeometryError):
        q.convex_hull([[0, 0], [1, 1], [2, 2]])
    seg = q.convex_hull([[0, 0], [1, 1], [2, 2]], allow_degenerate=True)
    assert seg.degenerate


def test_steiner_fit_brackets():
    k = q.random_body(5, 2, 0)
    values, half = q.steiner_fit(k)
    for i in range(3):
        assert abs(values[i] - q.quermassintegral(k, i)) <= half[i] + 1e-6


def test_projection_support_of_cube():
    cube = q.convex_hull(CUBE)
    u = [1 / 3, 2 / 3, 2 / 3]
    assert q.projection_support([cube, cube], u) == pytest.approx(5 / 3)
    assert q.projection_support([cube, None], [0, 0, 1]) == pytest.approx(2.0)


def test_checks_and_scalars():
    r = q.check_trial("bm.eq1", 42, 3, 0)
    assert r["verdict"] != "violation_candidate"
    assert r["lhs"] >= r["rhs"]
    assert "thm1.eq19" in q.inequality_ids()
    assert q.bellman_check([3.0, 1.0], [2.0, 1.0], 2.0) >= 0
    assert q.scalar_lemma4_check(2.0, 1.0, 4.0, 2.0, 0.5) == pytest.approx(0.0, abs=1e-12)


def test_search_determinism():
    a = q.conjecture_search("problem1", 2, 20, seed=7)
    b = q.conjecture_search("problem1", 2, 20, seed=7)
    assert a == b
    lhs, rhs, rel = q.evaluate_search_instance(a["worst_instance"])
    assert rel == a["min_rel_slack"]


def _cli():
    path = os.environ.get("QUERMASS_CLI")
    if not path or not pathlib.Path(path).exists():
        pytest.skip("QUERMASS_CLI not set")
    return path


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--dims", "2", "--trials", "2", "--i", "0"],
        ["equality", "--dims", "2", "--trials", "1", "--families", "1"],
        ["search", "problem1", "af_special", "--r", "2", "--trials", "5"],
        ["selftest", "--dims", "2"],
    ],
)
def test_reports_match_schema(args):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((ROOT / "docs" / "report-schema.json").read_text())
    out = subprocess.run([_cli()] + args, capture_output=True, text=True, check=True).stdout
    jsonschema.validate(json.loads(out), schema)
