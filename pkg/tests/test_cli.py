import json
import shutil
import subprocess
import sys

import pytest
from fractions import Fraction

from dispersive_agp import cli
from dispersive_agp.exact import Solution
from dispersive_agp.geom import Point


def run(capsys, *args):
    code = cli.main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_solve_verify_render(tmp_path, capsys):
    inst, sol, svg = tmp_path / "f.json", tmp_path / "s.json", tmp_path / "f.svg"
    assert run(capsys, "gen", "fig-disp3", "-o", inst)[0] == 0
    code, out, _ = run(capsys, "solve", inst, "-o", sol)
    assert code == 0 and out.strip() == "3"
    code, out, _ = run(capsys, "verify", inst, sol)
    assert code == 0 and out.startswith("ok")
    assert run(capsys, "render", inst, sol, "-o", svg)[0] == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "crimson" in text and "dispersion 3" in text


@pytest.mark.parametrize("method", ["dp", "wc3", "wc2"])
def test_methods(tmp_path, capsys, method):
    inst = tmp_path / "o.json"
    run(capsys, "gen", "office", "--seed", 3, "--rooms", 5, "--independent", "-o", inst)
    code, out, _ = run(capsys, "solve", inst, "--method", method)
    assert code == 0
    val = out.strip()
    if method == "wc3":
        assert val == "inf" or Fraction(val) >= 3




def test_packing_rational(tmp_path, capsys):
    inst = tmp_path / "p.json"
    assert run(capsys, "gen", "packing", "--c", 11, "--eps", "1/2", "--tau", "1/8", "-o", inst)[0] == 0
    assert run(capsys, "solve", inst)[1].strip() == "9/4"
    assert "1/16" in inst.read_text()


def test_verify_failure(tmp_path, capsys):
    inst, sol = tmp_path / "f.json", tmp_path / "s.json"
    run(capsys, "gen", "fig-disp3", "-o", inst)
    Solution([Point(0, 0)], "inf").write(sol)
    code, out, _ = run(capsys, "verify", inst, sol)
    assert code == 1 and out


def test_usage_and_input_errors(tmp_path, capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "solve")[0] == 2
    code, _, err = run(capsys, "solve", tmp_path / "missing.json")
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "solve", bad)[0] == 2
    poly = tmp_path / "poly.json"
    run(capsys, "gen", "orthogonal", "--n", 12, "-o", poly)
    code, _, err = run(capsys, "solve", poly, "--method", "dp")
    assert code == 2 and "office" in err


def test_dp_precondition(tmp_path, capsys):
    inst = tmp_path / "h.json"
    run(capsys, "gen", "office", "--seed", 1, "--rooms", 8, "--holes", "-o", inst)
    code, _, err = run(capsys, "solve", inst, "--method", "dp")
    assert code == 2 and "DP preconditions violated" in err


def test_bench(tmp_path, capsys, monkeypatch):
    d = tmp_path / "b"
    d.mkdir()
    for n in (12, 20):
        run(capsys, "gen", "orthogonal", "--n", n, "--seed", n, "-o", d / f"o{n}.json")
    code, out, _ = run(capsys, "bench", d, "--timeout", 60)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].split() == ["instance", "n", "optimum", "seconds", "status"]
    assert len(lines) == 4 and all(l.endswith("ok") for l in lines[2:])
    monkeypatch.setenv(cli.TIMEOUT_ENV, "0.0001")
    code, out, _ = run(capsys, "bench", d)
    assert code == 1 and "timeout" in out
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run(capsys, "bench", empty)[0] == 2


def test_internal_error(monkeypatch, tmp_path, capsys):
    inst = tmp_path / "f.json"
    run(capsys, "gen", "fig-disp3", "-o", inst)

    def boom(*a):
        raise RuntimeError("boom")
    monkeypatch.setattr(cli, "run_method", boom)
    code, _, err = run(capsys, "solve", inst)
    assert code == 3 and "boom" in err


def test_console_script(tmp_path):
    exe = shutil.which("dagp")
    cmd = [exe] if exe else [sys.executable, "-m", "dispersive_agp.cli"]
    inst = tmp_path / "r.json"
    r = subprocess.run(cmd + ["gen", "ratio", "--k", "2", "-o", str(inst)], capture_output=True, text=True)
    assert r.returncode == 0
    data = json.loads(inst.read_text())
    assert len(data["office"]["rooms"]) == 2
