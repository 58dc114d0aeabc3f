import json
import subprocess
import sys

import pytest

from trinodal import cli
from trinodal.counts import NodalSummary
from trinodal.manifest import file_digest
from trinodal.modes import ModePair


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_both_methods(capsys):
    code, out, _ = run_cli(capsys, "count", "9", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["lambda"] == 97
    assert doc["recursion"] == {"nu": 10, "eta": 10, "loops": 4}
    assert doc["graph"] == {"nu": 10, "eta": 10, "loops": 4}
    assert doc["agree"] is True


def test_count_single_methods(capsys):
    code, out, _ = run_cli(capsys, "count", "9", "5", "--method", "recursion")
    assert code == 0
    doc = json.loads(out)
    assert doc["tiles"] == 2 and doc["recursion"]["nu"] == 10
    code, out, _ = run_cli(capsys, "count", "5", "1", "--method", "oracle")
    assert code == 0
    assert json.loads(out)["oracle"]["nu"] == 4


def test_count_mismatch_exits_2(capsys, monkeypatch):
    def fake(m, n):
        return NodalSummary(mode=ModePair(m, n), nu=999, eta=10, loops=4,
                            tiles=1, method="graph")
    monkeypatch.setattr(cli, "graph_nodal_count", fake)
    code, out, _ = run_cli(capsys, "count", "9", "4")
    assert code == 2
    assert json.loads(out)["agree"] is False


def test_count_invalid_mode_exits_1(capsys):
    code, _, err = run_cli(capsys, "count", "4", "4")
    assert code == 1
    assert "error" in err


def test_usage_errors_exit_1(capsys):
    assert run_cli(capsys, "bogus")[0] == 1
    assert run_cli(capsys, "count", "9")[0] == 1
    assert run_cli(capsys)[0] == 1
    assert run_cli(capsys, "distribution", "--growth", "1")[0] == 1


def test_help_and_version_exit_0(capsys):
    assert run_cli(capsys, "--help")[0] == 0
    code, out, _ = run_cli(capsys, "--version")
    assert code == 0


def test_verify_small_sweep(capsys, tmp_path):
    out_csv = tmp_path / "sweep.csv"
    code, out, _ = run_cli(capsys, "verify", "--max-lambda", "500",
                           "--out", str(out_csv))
    assert code == 0
    assert "0 mismatches" in out
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "m,n,lambda,nu,eta,loops,tiles"
    assert lines[1] == "2,1,5,1,0,0,1"
    manifest = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
    assert manifest["tool"] == "trinodal"
    assert manifest["command"] == "verify"
    assert manifest["outputs"][0]["sha256"] == file_digest(str(out_csv))
    assert "timestamp" not in json.dumps(manifest).lower()


def test_verify_below_first_eigenvalue(capsys):
    code, out, _ = run_cli(capsys, "verify", "--max-lambda", "4")
    assert code == 0
    assert "checked 0 modes" in out


def test_verify_mismatch_exits_2(capsys, monkeypatch):
    import trinodal.verify as verify_mod
    real = verify_mod.sweep_modes

    def fake(max_lambda, workers=None):
        r = real(max_lambda, workers=1)
        return type(r)(max_lambda=r.max_lambda, m=r.m, n=r.n, lam=r.lam,
                       nu=r.nu, eta=r.eta, loops=r.loops, tiles=r.tiles,
                       mismatches=((2, 1, "nu", 1, 2),))
    monkeypatch.setattr(cli, "sweep_modes", fake)
    code, out, _ = run_cli(capsys, "verify", "--max-lambda", "100")
    assert code == 2
    assert "mismatch (2, 1) nu" in out


def test_distribution_writes_histogram_and_manifest(capsys, tmp_path):
    out_csv = tmp_path / "hist.csv"
    seq_csv = tmp_path / "seq.csv"
    code, out, _ = run_cli(capsys, "distribution", "--lambda", "2000",
                           "--growth", "1", "--bins", "40",
                           "--out", str(out_csv),
                           "--sequence-out", str(seq_csv))
    assert code == 0
    doc = json.loads(out)
    assert doc["window"] == [2000.0, 4000.0]
    lines = out_csv.read_text().splitlines()
    assert len(lines) == 41
    assert seq_csv.read_text().startswith("N,m,n,lambda,nu,eta,loops,tiles,xi")
    manifest = json.loads((tmp_path / "hist.csv.manifest.json").read_text())
    assert [o["path"] for o in manifest["outputs"]] == \
        [str(out_csv), str(seq_csv)]


def test_distribution_bad_window_exits_1(capsys, tmp_path):
    code, _, err = run_cli(capsys, "distribution", "--lambda", "-5",
                           "--out", str(tmp_path / "h.csv"))
    assert code == 1 and "error" in err


def test_trace_writes_three_csvs(capsys, tmp_path):
    out_csv = tmp_path / "curve.csv"
    code, out, _ = run_cli(capsys, "trace", "--x-max", "60",
                           "--out", str(out_csv))
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "loops"
    assert doc["parseval_error"] < 1e-6
    assert (tmp_path / "curve_spectrum.csv").exists()
    assert (tmp_path / "curve_peaks.csv").exists()
    manifest = json.loads((tmp_path / "curve.csv.manifest.json").read_text())
    assert len(manifest["outputs"]) == 3


def test_trace_boundary_kind(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "trace", "--kind", "boundary",
                           "--x-max", "60", "--out",
                           str(tmp_path / "b.csv"))
    assert code == 0
    assert 2.5 < json.loads(out)["loglog_slope"] < 3.5


def test_render_writes_svg(capsys, tmp_path):
    out_svg = tmp_path / "mode.svg"
    code, _, _ = run_cli(capsys, "render", "9", "5", "--out", str(out_svg))
    assert code == 0
    data = out_svg.read_bytes()
    assert data.startswith(b"<svg ") and data.count(b"<use ") == 2
    assert (tmp_path / "mode.svg.manifest.json").exists()


def test_graph_stdout_and_file(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "graph", "3", "2", "--format", "dot")
    assert code == 0
    assert out.startswith("graph nodal_3_2 {")
    out_json = tmp_path / "g.json"
    code, _, _ = run_cli(capsys, "graph", "9", "4", "--out", str(out_json))
    assert code == 0
    assert json.loads(out_json.read_text())["anchor"] == 31


def test_graph_tiling_mode_exits_1(capsys):
    code, _, err = run_cli(capsys, "graph", "6", "2")
    assert code == 1
    assert "reduced pair" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "trinodal", "count", "2", "1",
         "--method", "recursion"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["recursion"]["nu"] == 1
