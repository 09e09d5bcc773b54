import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from floatlab import cli
from floatlab import io as fio
from floatlab.errors import DegenerateInput, ParseError


def write_spec(tmp_path, name, spec):
    p = tmp_path / f"{name}.json"
    p.write_text(json.dumps(spec))
    return str(p)


@pytest.fixture
def specs(tmp_path):
    return {
        "square": write_spec(tmp_path, "square", {"schema": 1, "kind": "cube", "side": 2, "dim": 2}),
        "cube": write_spec(tmp_path, "cube", {"schema": 1, "kind": "cube", "side": 2}),
        "disk": write_spec(tmp_path, "disk", {"schema": 1, "kind": "disk", "radius": 1, "resolution": 4096}),
        "small_disk": write_spec(tmp_path, "small_disk", {"kind": "disk", "radius": 1, "resolution": 512}),
        "hull": write_spec(tmp_path, "hull", {"kind": "random_hull", "count": 40, "dim": 3}),
        "ellipse": write_spec(tmp_path, "ellipse", {"kind": "ellipse", "semi_axes": [2, 1], "resolution": 512}),
    }


def test_spec_cube():
    K = fio.parse_body_spec('{"kind": "cube", "side": 2}')
    assert K.volume == pytest.approx(8.0)


def test_spec_disk():
    K = fio.parse_body_spec('{"kind": "disk", "radius": 1, "resolution": 4096}')
    assert len(K.vertices) == 4096 and abs(K.area - math.pi) < 1e-5


def test_spec_ellipse():
    K = fio.parse_body_spec('{"kind": "ellipse", "semi_axes": [2, 1], "resolution": 2048}')
    assert abs(K.area - 2 * math.pi) < 1e-4


def test_spec_all_kinds():
    kinds = [
        {"kind": "polygon", "vertices": [[0, 0], [1, 0], [0, 1]]},
        {"kind": "polytope", "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]},
        {"kind": "ball", "radius": 2, "resolution": 500},
        {"kind": "ellipsoid", "semi_axes": [1.5, 1, 1], "resolution": 500},
        {"kind": "regular_polygon", "count": 7, "radius": 1},
        {"kind": "simplex", "dim": 2, "edge": 1},
        {"kind": "random_hull", "count": 30, "dim": 2, "seed": 4},
    ]
    for spec in kinds:
        assert fio.body_from_spec(spec).kind in ("polygon", "polytope")


def test_spec_transform():
    K = fio.body_from_spec({"kind": "cube", "side": 2, "dim": 2, "rotation": math.pi / 4, "center": [3, 0]})
    assert np.allclose(K.vertices.mean(axis=0), [3, 0])
    assert K.vertices[:, 0].max() == pytest.approx(3 + math.sqrt(2))


def test_random_hull_seeding():
    a = fio.body_from_spec({"kind": "random_hull", "count": 30}, seed=7)
    b = fio.body_from_spec({"kind": "random_hull", "count": 30}, seed=7)
    c = fio.body_from_spec({"kind": "random_hull", "count": 30}, seed=8)
    assert fio.body_digest(a) == fio.body_digest(b) != fio.body_digest(c)


@pytest.mark.parametrize("text, field", [
    ('{"kind": "blob"}', "kind"),
    ('{"kind": "disk", "radius": -1}', "radius"),
    ('{"kind": "disk", "radius": "x"}', "radius"),
    ('{"kind": "ellipse", "semi_axes": [1]}', "semi_axes"),
    ('{"kind": "cube", "dim": 4}', "dim"),
    ('{"kind": "cube", "colour": 1}', "colour"),
    ('{"kind": "cube", "schema": 2}', "schema"),
    ('{"kind": "regular_polygon", "radius": 1}', "count"),
])
def test_spec_errors(text, field):
    with pytest.raises(ParseError) as exc:
        fio.parse_body_spec(text)
    assert exc.value.field == field


def test_spec_json_error_line():
    with pytest.raises(ParseError) as exc:
        fio.parse_body_spec('{"kind": "cube",\n "side": }')
    assert exc.value.line == 2


def test_spec_degenerate():
    with pytest.raises(DegenerateInput):
        fio.body_from_spec({"kind": "polygon", "vertices": [[0, 0], [1, 1], [2, 2]]})


def test_dumps_seventeen_digits():
    text = fio.dumps({"x": 0.1, "y": [1.0, 2], "z": True, "w": None})
    assert '"x": 0.10000000000000001' in text
    assert "[1.0, 2]" in text
    assert json.loads(text)["x"] == 0.1


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ulam_disk_command(specs, capsys):
    code, out, _ = run(["ulam-test", "--body", specs["disk"], "--delta", "0.5"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["command"] == "ulam-test"
    assert rep["summary"]["spread"] < 1e-3
    assert rep["summary"]["R_estimate"] == pytest.approx(0.42441, abs=1e-5)
    assert set(rep) >= {"command", "config", "body_digest", "samples", "summary"}


def test_theorem2_cube_assert(specs, capsys):
    code, out, _ = run(["theorem2", "--body", specs["cube"], "--directions", "64", "--assert-ball"], capsys)
    assert code == 2
    assert json.loads(out)["summary"]["verdict"] is False


def test_theorem2_without_assert(specs, capsys):
    code, _, _ = run(["theorem2", "--body", specs["cube"], "--directions", "16"], capsys)
    assert code == 0


def test_metronoid_csv(specs, tmp_path, capsys):
    out = tmp_path / "m.csv"
    code, _, _ = run(["metronoid", "--body", specs["square"], "--delta", "0.5", "--format", "csv",
                      "--out", str(out)], capsys)
    assert code == 0
    cols, data = fio.read_csv(str(out))
    assert cols == ["phi", "u1", "u2", "X1", "X2"]
    assert data.shape == (1024, 5)
    assert len(out.read_text().splitlines()) == 1025


def test_error_object(tmp_path, capsys):
    code, _, err = run(["cut", "--body", str(tmp_path / "missing.json")], capsys)
    assert code == 1
    assert json.loads(err)["error"] == "FileNotFoundError"
    bad = write_spec(tmp_path, "bad", {"kind": "disk", "radius": 0})
    code, _, err = run(["cut", "--body", bad], capsys)
    obj = json.loads(err)
    assert code == 1 and obj["error"] == "ParseError" and obj["field"] == "radius"


def test_invalid_delta_error(specs, capsys):
    code, _, err = run(["cut", "--body", specs["square"], "--delta", "0.7"], capsys)
    assert code == 1 and json.loads(err)["error"] == "InvalidDelta"


@pytest.mark.parametrize("argv", [
    ["cut", "--delta", "0.25", "--u", "1", "0"],
    ["cap", "--delta", "0.25", "--directions", "16"],
    ["floating-body", "--delta", "0.2", "--directions", "64"],
    ["critical-delta", "--directions", "64"],
    ["dupin", "--delta", "0.1", "--probes", "2"],
    ["curvature", "--delta", "0.1", "--directions", "256"],
    ["chord-chain", "--radius", "0.8", "--steps", "20"],
])
def test_commands_roundtrip(specs, tmp_path, capsys, argv):
    out = tmp_path / "r.json"
    code, _, err = run(argv + ["--body", specs["square"], "--out", str(out)], capsys)
    assert code == 0, err
    rep = fio.read_report(str(out))
    assert rep["command"] == argv[0]
    assert len(rep["samples"]) > 0
    assert all(len(r) == len(rep["columns"]) for r in rep["samples"])


def test_radon_command(specs, capsys):
    code, out, _ = run(["radon", "--body", specs["cube"], "--directions", "8"], capsys)
    assert code == 0 and len(json.loads(out)["samples"]) == 8


def test_chord_chain_assert(specs, capsys):
    code, out, _ = run(["chord-chain", "--body", specs["square"], "--radius", "0.8", "--steps", "50",
                        "--assert"], capsys)
    assert code == 2
    assert json.loads(out)["summary"]["closure_defect"] > 0.01


def test_critical_delta_command(tmp_path, capsys):
    tri = write_spec(tmp_path, "tri", {"kind": "simplex", "dim": 2})
    code, out, _ = run(["critical-delta", "--body", tri, "--assert"], capsys)
    assert code == 0
    assert json.loads(out)["summary"]["delta_c"] == pytest.approx(4 / 9, abs=2e-3)


def test_determinism(specs, tmp_path, capsys):
    outs = []
    for i in range(2):
        p = tmp_path / f"d{i}.json"
        run(["ulam-test", "--body", specs["hull"], "--delta", "0.3", "--directions", "32",
             "--tangents", "4", "--seed", "11", "--out", str(p)], capsys)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_determinism_across_thread_caps(specs, tmp_path):
    outs = []
    for threads in ("1", "3"):
        p = tmp_path / f"t{threads}.csv"
        env = dict(os.environ, FLOATLAB_THREADS=threads)
        subprocess.run([sys.executable, "-m", "floatlab", "cap", "--body", specs["ellipse"],
                        "--delta", "0.3", "--directions", "64", "--format", "csv", "--out", str(p)],
                       check=True, env=env)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_roundtrip_values(specs, tmp_path, capsys):
    p = tmp_path / "c.json"
    run(["cap", "--body", specs["ellipse"], "--delta", "0.3", "--directions", "8", "--out", str(p)], capsys)
    rep = fio.read_report(str(p))
    from floatlab import floating, shapes
    K = fio.load_body(specs["ellipse"])
    recs = floating.cap_records(K, shapes.circle_directions(8), 0.3)
    assert [r[2] for r in rep["samples"]] == [r.offset for r in recs]
