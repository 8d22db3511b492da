import json
import subprocess
import sys

import numpy as np
import pytest
from click.testing import CliRunner

from bcjulia.cli import main, parse_grid, parse_reals, run
from bcjulia.slicing import read_csv


def invoke(args):
    result = CliRunner().invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result.output


def test_parse_reals_pads_and_reports_position():
    assert parse_reals("0.25", 4) == [0.25, 0, 0, 0]
    assert parse_reals("-0.123,0.745", 2) == [-0.123, 0.745]
    with pytest.raises(Exception, match="component 2"):
        parse_reals("1,x", 4)
    with pytest.raises(Exception, match="at most 2"):
        parse_reals("1,2,3", 2)
    with pytest.raises(Exception, match="not finite"):
        parse_reals("nan", 2)


def test_parse_grid():
    assert parse_grid("401") == (401, 401)
    assert parse_grid("101x51") == (101, 51)
    assert parse_grid("11,21") == (11, 21)
    with pytest.raises(Exception):
        parse_grid("1x2x3")


def test_julia2d_row_count(tmp_path):
    out = tmp_path / "parabolic"
    invoke(["julia2d", "-c", "0.25", "-n", "10000", "--out", str(out)])
    s = read_csv(tmp_path / "parabolic.csv")
    assert len(s) == 10_000
    assert np.all(s.xyz[:, 2] == 0)
    assert set(s.tags.tolist()) == {"J"}
    manifest = json.loads((tmp_path / "parabolic.meta.json").read_text())
    assert manifest["subcommand"] == "julia2d"
    assert manifest["params"]["points"] == 10_000
    assert manifest["rng"] == "numpy.random.PCG64"


def test_out_suffix_is_stripped(tmp_path):
    invoke(["julia2d", "-c", "0,1", "-n", "100", "--out", str(tmp_path / "x.csv"), "--format", "xyz"])
    assert (tmp_path / "x.xyz").exists() and (tmp_path / "x.meta.json").exists()


def test_julia3d_iim_torus(tmp_path):
    out = tmp_path / "t"
    invoke(["julia3d-iim", "-c", "0,0,0,0", "-n", "20000", "--out", str(out)])
    manifest = json.loads((tmp_path / "t.meta.json").read_text())
    assert {o["format"] for o in manifest["outputs"]} == {"csv", "ply"}
    assert abs(manifest["result"]["cloud_stats"]["max_norm"] - 1) < 1e-9
    s = read_csv(tmp_path / "t.csv")
    assert len(s) == manifest["result"]["slice"]["count"] > 0
    # a kept point has |d| < eps and norm 1
    assert np.allclose(np.sum(s.xyz**2, axis=1), 1, atol=0.05**2 + 1e-12)


def test_julia3d_boundary_tags(tmp_path):
    out = tmp_path / "b"
    invoke(["julia3d-boundary", "-c", "0.25", "-n", "2000", "--grid", "101", "--budget", "20000",
            "--epsilon", "0.1", "--out", str(out), "--format", "csv"])
    s = read_csv(tmp_path / "b.csv")
    assert set(s.tags.tolist()) <= {"JxJ", "JxK", "KxJ"}
    assert len(s) > 0
    manifest = json.loads((tmp_path / "b.meta.json").read_text())
    assert manifest["result"]["cloud"]["budget_split"] == {"JxJ": 10000, "JxK": 5000, "KxJ": 5000}


def test_fixed_points_parabolic():
    text = invoke(["fixed-points", "-c", "0.25,0,0,0"])
    assert "1 fixed point(s)" in text
    assert "w = 0.5 + 0.0i1 + 0.0i2 + 0.0j" in text
    assert text.count("indifferent") == 2
    assert "in JxJ: yes" in text


def test_fixed_points_zero():
    text = invoke(["fixed-points", "-c", "0"])
    assert "4 fixed point(s)" in text
    assert "attractive" in text and "repelling" in text
    assert text.count("in JxJ: yes") == 1


def test_fixed_points_i_residuals():
    text = invoke(["fixed-points", "-c", "0,1,0,0"])
    residuals = [float(line.split("residual = ")[1].split()[0]) for line in text.splitlines() if "residual" in line]
    assert len(residuals) == 4
    assert max(residuals) < 1e-12


@pytest.mark.parametrize("c, verdict", [("0,1,0,0", "dendrite-consistent"), ("0", "not-dendrite"),
                                        ("0.25", "not-dendrite")])
def test_dendrite_check(c, verdict):
    text = invoke(["dendrite-check", "-c", c])
    assert text.splitlines()[-1] == f"verdict: {verdict}"


def test_parse_error_is_single_line(capsys):
    code = run(["julia2d", "-c", "0.25,abc"])
    err = capsys.readouterr().err
    assert code != 0
    assert err.count("\n") == 1 and err.startswith("bcjulia: error:")
    assert "component 2" in err


def test_invalid_config_is_single_line(capsys, tmp_path):
    code = run(["julia3d-iim", "-c", "0", "--mode", "tree", "--depth", "13", "--out", str(tmp_path / "x")])
    err = capsys.readouterr().err
    assert code == 1
    assert err.count("\n") == 1 and "depth" in err
    assert not (tmp_path / "x.csv").exists()


def test_unwritable_output_fails_with_path(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code = run(["julia2d", "-c", "0", "-n", "10", "--out", str(blocker / "sub" / "x")])
    err = capsys.readouterr().err
    assert code != 0
    assert err.count("\n") == 1 and str(blocker) in err


def test_replay_is_byte_identical(tmp_path):
    out = tmp_path / "orig"
    invoke(["julia3d-boundary", "-c", "0.0635,0.3725,0.3725,0.1865", "-n", "3000", "--grid", "121",
            "--budget", "30000", "--seed", "17", "--out", str(out)])
    invoke(["replay", str(tmp_path / "orig.meta.json"), "--out", str(tmp_path / "again")])
    for ext in ("csv", "ply"):
        assert (tmp_path / f"orig.{ext}").read_bytes() == (tmp_path / f"again.{ext}").read_bytes()
    a = json.loads((tmp_path / "orig.meta.json").read_text())
    b = json.loads((tmp_path / "again.meta.json").read_text())
    assert [o["sha256"] for o in a["outputs"]] == [o["sha256"] for o in b["outputs"]]


def test_replay_rejects_non_manifest(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text("{}")
    assert run(["replay", str(p)]) == 2
    assert "not a bcjulia manifest" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "bcjulia", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "bcjulia" in proc.stdout
