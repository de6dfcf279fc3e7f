import json
import subprocess
import sys

import numpy as np
import pytest

from hklab.cli import main
from hklab.linalg import matrix_from_json, matrix_to_json
from hklab.mv import EncodedPoint
from hklab.tracer import TracePath

M = [[2.0, 1.0], [0.0, -1.0]]


@pytest.fixture
def mfile(tmp_path):
    p = tmp_path / "M.json"
    p.write_text(json.dumps(matrix_to_json(np.array(M))))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestInvolve:
    def test_a0_is_conjugation(self, mfile, capsys):
        code, out, _ = run(["involve", "--a", "0", "--in", mfile], capsys)
        assert code == 0
        assert np.linalg.norm(matrix_from_json(json.loads(out)) - np.array(M)) <= 1e-8 * 4

    def test_nested_list_input_and_report(self, tmp_path, capsys):
        src = tmp_path / "m.json"
        src.write_text(json.dumps(M))
        out, rep = tmp_path / "o.json", tmp_path / "r.json"
        code, _, _ = run(["involve", "--form", "gl", "--a", "0.5", "--in", str(src),
                          "--out", str(out), "--report", str(rep)], capsys)
        assert code == 0
        A = matrix_from_json(json.loads(out.read_text()))
        assert A.shape == (2, 2)
        r = json.loads(rep.read_text())
        assert r["a"] == 0.5 and r["charpoly_drift"] <= 1e-7

    def test_nonreal_spectrum_exit_4(self, tmp_path, capsys):
        p = tmp_path / "r.json"
        p.write_text(json.dumps([[0.0, -1.0], [1.0, 0.0]]))
        code, _, err = run(["involve", "--a", "0.5", "--in", str(p)], capsys)
        assert code == 4 and "NotRealSpectrum" in err

    def test_missing_file_exit_4(self, capsys):
        code, _, _ = run(["involve", "--a", "0.5", "--in", "/nonexistent.json"], capsys)
        assert code == 4

    def test_classical_form(self, tmp_path, capsys):
        p = tmp_path / "s.json"
        p.write_text(json.dumps([[1.0, 2.0], [0.0, -1.0]]))
        code, out, _ = run(["involve", "--form", "sl_split", "--a", "1", "--in", str(p)], capsys)
        assert code == 0
        A = matrix_from_json(json.loads(out))
        # a = 1 gives -theta(M) = M^T for the split form
        assert np.allclose(A, np.array([[1.0, 0.0], [2.0, -1.0]]), atol=1e-8)


class TestUsage:
    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate"],
        ["ks", "--n", "2", "--bogus"],
        ["ks"],
        ["involve", "--a", "2", "--in", "x.json"],
        ["ks", "--n", "0"],
    ])
    def test_usage_errors(self, argv, capsys):
        assert run(argv, capsys)[0] == 2

    def test_no_abbreviations(self, capsys):
        assert run(["ks", "--n", "2", "--form", "dot"], capsys)[0] == 2

    def test_bad_env_tolerance(self, monkeypatch, capsys):
        monkeypatch.setenv("HKLAB_TOL", "nope")
        assert run(["ks", "--n", "2"], capsys)[0] == 4

    def test_env_tolerance_applies(self, monkeypatch, mfile, tmp_path, capsys):
        monkeypatch.setenv("HKLAB_TOL", "1e-6")
        out = tmp_path / "p.json"
        assert run(["encode", "--in", mfile, "--out", str(out)], capsys)[0] == 0
        pt = EncodedPoint.from_json(json.loads(out.read_text()))
        assert pt.balance.target == 1e-6


class TestVerbs:
    def test_ks(self, capsys):
        code, out, _ = run(["ks", "--n", "2"], capsys)
        assert code == 0
        assert len(out.strip().splitlines()) == 3
        code, out, _ = run(["ks", "--n", "3", "--format", "dot"], capsys)
        assert out.startswith("digraph")
        code, out, _ = run(["ks", "--n", "2", "--format", "json"], capsys)
        assert json.loads(out)["pairs"] == [[[2], [2]], [[1, 1], [1, 1]]]

    def test_hecke(self, capsys):
        code, out, _ = run(["hecke", "--form", "sl_split", "--n", "4"], capsys)
        assert code == 0 and json.loads(out)["d"] == [1, 1, 1]
        code, out, _ = run(["hecke", "--form", "sl_complex", "--n", "3", "--format", "text"], capsys)
        assert "(T_s1 + 1)" in out

    def test_hecke_missing_signature_exit_4(self, capsys):
        assert run(["hecke", "--form", "su_pq", "--n", "4"], capsys)[0] == 4

    def test_semismall(self, capsys):
        code, out, _ = run(["semismall", "--n", "2", "--format", "json"], capsys)
        rows = json.loads(out)
        assert [r["fiber_dim"] for r in rows] == [0, 1]

    def test_encode_decode_balance_round_trip(self, mfile, tmp_path, capsys):
        p, p2, d = tmp_path / "p.json", tmp_path / "p2.json", tmp_path / "d.json"
        code, _, err = run(["encode", "--in", mfile, "--out", str(p)], capsys)
        assert code == 0 and "balance:" in err
        assert run(["balance", "--in", str(p), "--out", str(p2)], capsys)[0] == 0
        assert run(["decode", "--in", str(p2), "--out", str(d)], capsys)[0] == 0
        out = matrix_from_json(json.loads(d.read_text()))
        assert np.linalg.norm(out - np.array(M)) <= 1e-9

    def test_balance_raw_rep(self, mfile, tmp_path, capsys):
        p, p2 = tmp_path / "p.json", tmp_path / "p2.json"
        run(["encode", "--in", mfile, "--no-balance", "--out", str(p)], capsys)
        rep_only = tmp_path / "rep.json"
        rep_only.write_text(json.dumps(json.loads(p.read_text())["rep"]))
        assert run(["balance", "--in", str(rep_only), "--out", str(p2)], capsys)[0] == 0
        assert json.loads(p2.read_text())["balance"]["converged"] is True

    def test_trace(self, tmp_path, capsys):
        src, out = tmp_path / "n.json", tmp_path / "path.json"
        src.write_text(json.dumps([[0.0, 1.0], [0.0, 0.0]]))
        assert run(["trace", "--in", str(src), "--steps", "8", "--out", str(out)], capsys)[0] == 0
        path = TracePath.from_json(json.loads(out.read_text()))
        assert path.diagnostics["endpoint_check"]["ok"] is True
        assert np.linalg.norm(path.target - path.target.T) <= 1e-6

    def test_verify_exit_code(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code, _, err = run(["verify", "--nmax", "2", "--samples", "1", "--out", str(out)], capsys)
        rep = json.loads(out.read_text())
        assert code == (0 if rep["all_passed"] else 3)
        assert rep["all_passed"] is True
        assert "PASS" in err


def test_console_script_module():
    res = subprocess.run([sys.executable, "-m", "hklab.cli", "ks", "--n", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "(1, 1)" in res.stdout
