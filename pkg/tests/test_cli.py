import hashlib
import json
import subprocess
import sys

import numpy as np
import pytest

from wrightdist.cli import EXIT_NUMERIC, EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_cauchy_peak(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--dist", "gsas",
                               "--alpha", "1", "--k", "1", "--x", "0")
        assert code == EXIT_OK
        assert "0.3183098862" in out

    def test_laplace_value(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--dist", "gep",
                               "--alpha", "1", "--k", "1", "--x", "1")
        assert code == EXIT_OK
        assert "0.1839397206" in out

    def test_delta_regime_exit(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--dist", "fcm",
                               "--alpha", "2", "--k", "1", "--x", "0.7071")
        assert code == EXIT_NUMERIC
        assert "DeltaRegime" in err

    def test_mv_eval(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--dist", "mv-ell", "--alpha", "1",
                               "--k", "4", "--cov", "1,0;0,1", "--x", "0,0")
        assert code == EXIT_OK
        assert "0.159154" in out

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--format", "json", "--dist", "gsas",
                               "--alpha", "1", "--k", "2", "--x", "0,1")
        assert code == EXIT_OK
        rows = json.loads(out)
        assert len(rows) == 2 and "pdf" in rows[0]

    def test_bad_params_exit(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--dist", "gsas",
                               "--alpha", "3.0", "--k", "1", "--x", "0")
        assert code == EXIT_USAGE


class TestFit:
    def test_synthetic_t7(self, capsys, tmp_path):
        rng = np.random.default_rng(53)
        p = tmp_path / "ret.csv"
        np.savetxt(p, 0.01 * rng.standard_t(df=7, size=400_000), fmt="%.8f")
        code, out, _ = run_cli(capsys, "fit", str(p))
        assert code == EXIT_OK
        payload = json.loads(out)
        assert abs(payload["alpha"] - 1.0) < 0.08
        assert abs(payload["k"] - 7.0) < 1.0

    def test_malformed_csv(self, capsys, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("0.01\nbroken-line\n")
        code, _, err = run_cli(capsys, "fit", str(p))
        assert code == EXIT_USAGE
        assert "line 2" in err

    def test_hist_overlay(self, capsys, tmp_path):
        rng = np.random.default_rng(54)
        p = tmp_path / "ret.csv"
        np.savetxt(p, rng.standard_t(df=6, size=150_000), fmt="%.6f")
        out_tsv = tmp_path / "hist.tsv"
        code, _, _ = run_cli(capsys, "fit", str(p), "--hist-out", str(out_tsv))
        assert code == EXIT_OK
        header = out_tsv.read_text().splitlines()[0]
        assert header == "x\thist_density\tmodel_pdf"


class TestGrid:
    def test_small_grid_files(self, capsys, tmp_path):
        out = tmp_path / "grid.tsv"
        prefix = str(tmp_path / "lvl")
        code, _, _ = run_cli(capsys, "grid", "--alpha-range", "0.6:1.2",
                             "--k-range", "2:5", "--resolution", "40",
                             "--peak-target", "0.71", "--exkurt-target", "20",
                             "--out", str(out), "--polyline-prefix", prefix)
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha\tk\tstd_peak\texkurt\tvalid"
        assert len(lines) == 1 + 40 * 40
        peaks = (tmp_path / "lvl_peak.tsv").read_text().splitlines()
        assert peaks[0] == "alpha0\tk0\talpha1\tk1"
        assert len(peaks) > 2

    def test_s_coordinate(self, capsys, tmp_path):
        out = tmp_path / "grid.tsv"
        code, _, _ = run_cli(capsys, "grid", "--alpha-range", "0.5:2.0",
                             "--k-range", "4:12", "--resolution", "10",
                             "--s-coord", "--out", str(out),
                             "--polyline-prefix", str(tmp_path / "lvl"))
        assert code == EXIT_OK
        rows = out.read_text().splitlines()
        assert rows[0].split("\t")[2] == "s"
        alpha0, _, s0 = (float(t) for t in rows[1].split("\t")[:3])
        assert s0 == pytest.approx(1.0 / alpha0)


class TestSimulate:
    def test_seed_reproducibility(self, capsys, tmp_path):
        hashes = []
        for run in ("a", "b"):
            prefix = str(tmp_path / f"sim_{run}")
            code, _, _ = run_cli(capsys, "simulate", "--dist", "fcm",
                                 "--alpha", "1.0", "--k", "4", "--years", "15",
                                 "--seed", "7", "--paths", "2",
                                 "--out-prefix", prefix)
            assert code == EXIT_OK
            digest = hashlib.sha256((tmp_path / f"sim_{run}_samples.txt").read_bytes())
            hashes.append(digest.hexdigest())
        assert hashes[0] == hashes[1]

    def test_outputs_exist(self, capsys, tmp_path):
        prefix = str(tmp_path / "sim")
        code, out, _ = run_cli(capsys, "simulate", "--dist", "fcm", "--alpha", "1.0",
                               "--k", "4", "--years", "15", "--seed", "1",
                               "--paths", "2", "--out-prefix", prefix)
        assert code == EXIT_OK
        summary = json.loads((tmp_path / "sim_summary.json").read_text())
        assert summary["n_samples"] > 0
        hist = (tmp_path / "sim_hist.tsv").read_text().splitlines()
        assert hist[0] == "x\tdensity\ttheory"


class TestSelftest:
    def test_passes(self, capsys):
        code, out, _ = run_cli(capsys, "selftest")
        assert code == EXIT_OK
        assert "all passed" in out

    def test_perturbation_detected(self, capsys):
        code, out, _ = run_cli(capsys, "selftest", "--perturb", "1e-3")
        assert code == EXIT_SELFTEST
        assert "FAIL" in out


class TestConfigFile:
    def test_config_provides_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("# defaults\nalpha = 1.0\nk = 1.0\n")
        code, out, _ = run_cli(capsys, "--config", str(cfg), "eval",
                               "--dist", "gsas", "--x", "0")
        assert code == EXIT_OK
        assert "0.3183098862" in out

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("alpha = 1.0\nk = 1.0\nx = 0\n")
        code, out, _ = run_cli(capsys, "--config", str(cfg), "eval",
                               "--dist", "gsas", "--k", "3", "--x", "0")
        assert code == EXIT_OK
        assert "0.3675525969" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wrightdist.cli", "eval",
                           "--dist", "gsas", "--alpha", "1", "--k", "1", "--x", "0"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "0.318309" in proc.stdout
