import json
import subprocess
import sys
from fractions import Fraction

import pytest

from sobolev_constants import verify
from sobolev_constants.cli import main
from sobolev_constants.spline import spline_from_dict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_profile_value(capsys):
    code, out, _ = run(capsys, "profile", "2", "1", "--a", "1/2", "--no-timing")
    assert code == 0
    rec = json.loads(out)
    assert rec["command"] == "profile"
    assert rec["results"]["value"] == "1/16"
    assert "timing" not in rec


def test_profile_k0(capsys):
    _, out, _ = run(capsys, "profile", "3", "0")
    res = json.loads(out)["results"]
    assert res["B_coeffs"] == ["9"]
    assert res["scale"] == "1/180"
    assert "seconds" in json.loads(out)["timing"]


def test_profile_bad_k(capsys):
    code, _, err = run(capsys, "profile", "1", "1")
    assert code == 2
    assert "k must satisfy" in err and "k <= n-1" in err


def test_spline_export(capsys, tmp_path):
    code, out, _ = run(capsys, "spline", "1", "0", "1/2", "--no-timing")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["left_coeffs"] == ["0", "1/2"]
    assert res["right_coeffs"] == ["1/2", "-1/2"]
    target = tmp_path / "g.json"
    assert main(["spline", "2", "0", "1/3", "--out", str(target), "--no-timing"]) == 0
    s = spline_from_dict(json.loads(target.read_text())["results"])
    assert s.n == 2 and s.a == Fraction(1, 3)


@pytest.mark.parametrize("a", ["0", "1", "3/2", "abc"])
def test_spline_bad_a(capsys, a):
    code, _, _ = run(capsys, "spline", "2", "0", a)
    assert code == 2


def test_lambda_exact(capsys):
    code, out, _ = run(capsys, "lambda", "2", "0", "--no-timing")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["exact"] == "1/192"
    assert res["lambda_sq"]["lo"] == res["lambda_sq"]["hi"] == "1/192"


def test_lambda_k3_closed_form(capsys):
    _, out, _ = run(capsys, "lambda", "4", "3", "--precision", "1e-25", "--no-timing")
    res = json.loads(out)["results"]
    lo, hi = Fraction(res["lambda_sq"]["lo"]), Fraction(res["lambda_sq"]["hi"])
    assert hi - lo <= Fraction(1, 10 ** 25)
    cf = res["report"]["lambda_sq"]["closed_form"]
    assert cf["contained"] is True


def test_lambda_precision_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("SOBOLEV_PRECISION", "1e-6")
    _, out, _ = run(capsys, "lambda", "3", "1", "--no-timing")
    assert json.loads(out)["inputs"]["precision"] == "1/1000000"
    _, out, _ = run(capsys, "lambda", "3", "1", "--precision", "1e-9", "--no-timing")
    assert json.loads(out)["inputs"]["precision"] == "1/1000000000"
    monkeypatch.setenv("SOBOLEV_PRECISION", "-1")
    code, _, _ = run(capsys, "lambda", "3", "1")
    assert code == 2


def test_lambda_bad_precision(capsys):
    code, _, _ = run(capsys, "lambda", "3", "1", "--precision", "0")
    assert code == 2


def test_rescale(capsys):
    _, out, _ = run(capsys, "rescale", "1", "0", "1/2", "--no-timing")
    res = json.loads(out)["results"]
    assert res == {"point": "0", "factor": "2", "value_01": "1/4", "value_sym": "1/2"}


def test_scan_csv_separator(capsys):
    code, out, _ = run(capsys, "scan", "--k", "3", "--n-from", "4", "--n-to", "6",
                       "--format", "csv", "--sep", ";", "--no-timing")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("n;k;maxima_count")
    assert len(lines) == 4
    assert all(line.split(";")[2] == "2" for line in lines[1:])


def test_scan_json_k4(capsys):
    _, out, _ = run(capsys, "scan", "--k", "4", "--n-from", "6", "--n-to", "8", "--no-timing")
    rows = json.loads(out)["results"]["rows"]
    assert all(r["global_max"] == "a=1/2" and "competitor" in r for r in rows)


@pytest.mark.parametrize("argv", [
    ["scan", "--k", "9", "--n-from", "10", "--n-to", "11"],
    ["scan", "--k", "3", "--n-from", "3", "--n-to", "5"],
    ["scan", "--k", "3", "--n-from", "8", "--n-to", "5"],
    ["frobnicate"],
    [],
    ["profile", "two", "1"],
    ["profile", "3", "1", "--sep", ";;"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_csv_key_value(capsys):
    _, out, _ = run(capsys, "profile", "2", "1", "--format", "csv", "--no-timing")
    lines = out.strip().splitlines()
    assert lines[0] == "field,value"
    assert "results.B_coeffs[1],3" in lines


def test_deterministic(capsys):
    outs = [run(capsys, "lambda", "6", "5", "--no-timing")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_verify_table_and_failure(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--n-max", "2", "--no-timing")
    assert code == 0
    assert "ALL PASS" in out and "orientation:" in out

    def broken(*args):
        return False, "forced"

    monkeypatch.setattr(verify, "inv_structure", broken)
    code, out, err = run(capsys, "verify", "--n-max", "2", "--format", "json", "--no-timing")
    assert code == 1
    assert json.loads(out)["results"]["failing"] == ["structure_theorem"]
    assert "structure_theorem" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sobolev_constants", "profile", "2", "1", "--a", "1/3",
                           "--no-timing"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["results"]["value"]
