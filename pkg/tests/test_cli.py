import json
import subprocess
import sys

import pytest

from kincomp import build_graph, graph_to_json
from kincomp import generators as gen
from kincomp.cli import RunConfig, main
from kincomp.errors import InputError
from kincomp.io import dumps


@pytest.fixture
def triangle_file(tmp_path):
    p = tmp_path / "triangle.json"
    p.write_text(dumps(graph_to_json(gen.triangle())))
    return p


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path.json"
    p.write_text(dumps(graph_to_json(build_graph([1, 1], [(1, 2)]))))
    return p


def read(path):
    return json.loads(path.read_text())


def test_analyze_triangle(triangle_file, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["analyze", "--input", str(triangle_file), "--out", str(out)]) == 0
    sip = read(out / "siphons.json")
    assert sip["method"] == "closed_form"
    assert sip["minimal_siphons"] == [["N1", "N2", "N3"], ["N1", "S1"], ["N2", "S2"], ["N3", "S3"], ["S1", "S2", "S3"]]
    per = read(out / "persistence.json")
    assert per["verdict"] == "persistent_certified"
    assert "5 minimal siphons" in capsys.readouterr().out


def test_analyze_is_byte_identical(triangle_file, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["analyze", "--input", str(triangle_file), "--out", str(a)])
    main(["analyze", "--input", str(triangle_file), "--out", str(b)])
    for name in ("siphons.json", "persistence.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_analyze_path_graph(path_file, tmp_path):
    out = tmp_path / "out"
    assert main(["analyze", "--input", str(path_file), "--out", str(out)]) == 2
    assert read(out / "siphons.json")["method"] == "enumeration"
    assert read(out / "persistence.json")["verdict"] == "inconclusive"


def test_analyze_place_cap(tmp_path):
    p = tmp_path / "long.json"
    p.write_text(dumps(graph_to_json(gen.path(5))))
    assert main(["analyze", "--input", str(p), "--out", str(tmp_path), "--max-places", "4"]) == 2


def test_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["analyze", "--input", str(p), "--out", str(tmp_path)]) == 1
    assert "line 1" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["analyze", "--input", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == 1


def test_usage_error_is_input_error(triangle_file):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--input", str(triangle_file), "--t-end", "abc"])
    assert exc.value.code == 1


def test_simulate(triangle_file, tmp_path):
    out = tmp_path / "sim"
    code = main(["simulate", "--input", str(triangle_file), "--out", str(out), "--n0", "1,0,0",
                 "--t-end", "10", "--samples", "11"])
    assert code == 0
    lines = (out / "trajectory.csv").read_text().splitlines()
    assert lines[0] == "t,n1,n2,n3,I" and len(lines) == 12
    assert all(abs(float(line.split(",")[-1]) - 1.0) < 1e-9 for line in lines[1:])


def test_simulate_outside_box(triangle_file, tmp_path):
    assert main(["simulate", "--input", str(triangle_file), "--out", str(tmp_path), "--n0", "2,0,0"]) == 1
    assert main(["simulate", "--input", str(triangle_file), "--out", str(tmp_path), "--n0", "0.5,0"]) == 1
    assert main(["simulate", "--input", str(triangle_file), "--out", str(tmp_path)]) == 1


def test_simulate_box_violation_is_numerical(triangle_file, tmp_path):
    code = main(["simulate", "--input", str(triangle_file), "--out", str(tmp_path), "--n0", "1,0,0",
                 "--t-end", "200", "--abs-tol", "1", "--rel-tol", "1"])
    assert code == 3


def test_equilibrium(triangle_file, tmp_path):
    out = tmp_path / "eq"
    assert main(["equilibrium", "--input", str(triangle_file), "--out", str(out), "--level", "1.2"]) == 0
    doc = read(out / "equilibrium.json")
    assert doc["point"] == pytest.approx([0.4, 0.4, 0.4], abs=1e-9)
    assert doc["residual_inf"] <= 2e-10
    assert main(["equilibrium", "--input", str(triangle_file), "--out", str(out), "--n0", "0.9,0.2,0.1"]) == 0
    assert read(out / "equilibrium.json")["point"] == pytest.approx([0.4, 0.4, 0.4], abs=1e-9)
    assert main(["equilibrium", "--input", str(triangle_file), "--out", str(out), "--level", "9"]) == 1


def test_equilibrium_refuses_unconnected(path_file, tmp_path):
    assert main(["equilibrium", "--input", str(path_file), "--out", str(tmp_path)]) == 2


def test_verify_triangle(triangle_file, tmp_path):
    out = tmp_path / "v"
    code = main(["verify", "--input", str(triangle_file), "--out", str(out), "--trials", "3", "--t-end", "20"])
    doc = read(out / "verification.json")
    assert code == 0 and doc["passed"]
    assert set(doc["checks"]) == {
        "equilibrium_uniqueness", "monotonicity", "contraction", "matrix_measure",
        "boundary_scan", "persistence_evidence", "boundary_repulsion",
    }


def test_verify_refuses_path(path_file, tmp_path, capsys):
    assert main(["verify", "--input", str(path_file), "--out", str(tmp_path)]) == 2
    assert "strongly connected" in capsys.readouterr().err


def test_config_validation(tmp_path):
    with pytest.raises(InputError):
        RunConfig("simulate", tmp_path, tmp_path, t_end=-1.0)
    with pytest.raises(InputError):
        RunConfig("simulate", tmp_path, tmp_path, samples=1)


def test_module_entry_point(triangle_file, tmp_path):
    res = subprocess.run([sys.executable, "-m", "kincomp", "analyze", "--input", str(triangle_file),
                          "--out", str(tmp_path)], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
