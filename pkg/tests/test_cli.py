import io
import json
import subprocess
import sys

import pytest

from nevpick.cli import run


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return write


def test_check2_infeasible_exit_3(files):
    code, out, _ = call(["check2", "--input", files("pair.json", {"nodes": [0, 0.5], "targets": [[[0]], [[0.9]]]})])
    assert code == 3
    res = json.loads(out)
    assert res["status"] == "infeasible"
    assert res["witness"]["lhs"] == pytest.approx(0.9) and res["witness"]["rhs"] == pytest.approx(0.5)


def test_check2_inconclusive_exit_0(files):
    code, out, _ = call(["check2", "--input", files("pair.json", {"nodes": [0, 0.5], "targets": [[[0]], [[0.2]]]})])
    assert code == 0 and json.loads(out)["status"] == "inconclusive"


def test_check3_hand_example(files):
    data = {
        "nodes": [0, 0.1, 0.2],
        "targets": [[[0, 0], [0, 0]], [[0.01, 0], [0, 0.02]], [[0.99, 0], [0, 0.99]]],
    }
    code, out, _ = call(["check3", "--input", files("t.json", data)])
    assert code == 3 and json.loads(out)["witness"]["k"] == 1


def test_check3_wrong_count(files):
    code, out, _ = call(["check3", "--input", files("pair.json", {"nodes": [0, 0.5], "targets": [[[0]], [[0.2]]]})])
    assert code == 1 and json.loads(out)["error"]["field"] == "input:/nodes"


def test_malformed_json_exit_1(files):
    code, out, _ = call(["check2", "--input", files("bad.json", "{nodes: ")])
    assert code == 1 and json.loads(out)["error"]["field"] == "input"


def test_field_pointer(files):
    data = {"nodes": [0, 0.5], "targets": [[[0]], [["x"]]]}
    code, out, _ = call(["check2", "--input", files("p.json", data)])
    assert code == 1 and json.loads(out)["error"]["field"] == "input:/targets/1/0/0"


def test_missing_file_and_usage_errors():
    assert call(["check2", "--input", "/nonexistent.json"])[0] == 1
    assert call(["frobnicate"])[0] == 1
    assert call([])[0] == 1


def test_numerical_failure_exit_2(files):
    A = files("A.json", [[0.5, 0], [0, 0.1]])
    f = files("f.json", {"kind": "rational", "num": [1], "den": [-0.5, 1]})
    code, out, _ = call(["funcalc", "--matrix", A, "--function", f])
    assert code == 2 and json.loads(out)["error"]["type"] == "PoleOnSpectrum"


def test_minpoly_side_by_side(files):
    A = files("A.json", [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    f = files("f.json", {"kind": "polynomial", "coeffs": [0, 0, 1]})
    code, out, _ = call(["minpoly", "--matrix", A, "--function", f])
    res = json.loads(out)
    assert code == 0 and res["degree_match"] and res["predicted"]["degree"] == 2


def test_spectra_and_homotopy(files):
    A = files("A.json", [[1, 1], [0, 2]])
    code, out, _ = call(["spectra", "--matrix", A, "--full"])
    res = json.loads(out)
    assert code == 0 and len(res["projections"]) == 2 and res["chi"] == [[3.0, 0.0], [2.0, 0.0]]
    code, out, _ = call(["homotopy", "--matrix", A])
    assert code == 0 and json.loads(out)["passed"]


def test_symmap(files):
    X = files("X.json", {"coords": [3, 2]})
    f = files("f.json", {"kind": "polynomial", "coeffs": [0, 0, 1]})
    code, out, _ = call(["symmap", "--point", X, "--function", f])
    # roots 1, 2 map to 1, 4
    got = [complex(*c) for c in json.loads(out)["result"]["coords"]]
    assert code == 0 and abs(got[0] - 5) < 1e-9 and abs(got[1] - 4) < 1e-9


def test_config_overrides(files):
    pair = files("pair.json", {"nodes": [0, 0.5], "targets": [[[0]], [[0.5000001]]]})
    assert call(["check2", "--input", pair])[0] == 0
    assert call(["check2", "--input", pair, "--verdict-margin", "1e-9"])[0] == 3
    cfg = files("cfg.json", {"verdict_margin": 1e-9})
    assert call(["--config", cfg, "check2", "--input", pair])[0] == 3
    bad = files("bad_cfg.json", {"verdict_margin": "big"})
    code, out, _ = call(["check2", "--input", pair, "--config", bad])
    assert code == 1 and json.loads(out)["error"]["field"].startswith("config:")


def test_deterministic_output(files):
    pair = files("pair.json", {"nodes": [0, 0.5], "targets": [[[0]], [[0.9]]]})
    assert call(["check2", "--input", pair])[1] == call(["check2", "--input", pair])[1]


def test_verbose_and_schema(files):
    pair = files("pair.json", {"nodes": [0, 0.5], "targets": [[[0]], [[0.9]]]})
    _, _, err = call(["check2", "--input", pair, "--verbose"])
    assert "infeasible" in err
    code, out, _ = call(["--schema"])
    assert code == 0 and "Dataset" in json.loads(out)


def test_selftest_exit_0():
    code, out, _ = call(["selftest", "--trials", "10"])
    res = json.loads(out)
    assert code == 0 and res["passed"] and len(res["checks"]) == 7


def test_module_entry_point(files):
    pair = files("pair.json", {"nodes": [0, 0.5], "targets": [[[0]], [[0.9]]]})
    proc = subprocess.run([sys.executable, "-m", "nevpick", "check2", "--input", pair], capture_output=True, text=True)
    assert proc.returncode == 3 and json.loads(proc.stdout)["status"] == "infeasible"
