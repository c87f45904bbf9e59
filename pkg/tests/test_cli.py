"""CLI: subcommands, output formats, determinism, exit codes, config."""

import json

import pytest

from rellich_cone import DegenerateModeError
from rellich_cone.cli import main
from rellich_cone.config import Config, load_config, resolve_config


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstant:
    def test_mode_k_report(self, capsys):
        code, out, _ = run_cli(capsys, "constant", "--n", "3", "--alpha", "0",
                               "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["M"] == pytest.approx(25 / 36, abs=0)
        assert data["regime"] == "ModeK"
        assert data["attained_lambda"] == 2.0
        assert data["certified"] is True

    def test_critical_report(self, capsys):
        code, out, _ = run_cli(capsys, "constant", "--n", "4", "--alpha", "0",
                               "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["critical"] == 3.0 and data["M"] is None
        assert data["regime"] == "Critical"

    def test_degenerate_report(self, capsys):
        code, out, _ = run_cli(capsys, "constant", "--n", "2", "--alpha", "0",
                               "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["positive"] is False and data["M"] == 0.0

    def test_table_format(self, capsys):
        code, out, _ = run_cli(capsys, "constant", "--n", "3", "--alpha", "0")
        assert code == 0
        assert "ModeK" in out and "gap-condition" in out

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "constant", "--n", "3", "--alpha", "0",
                               "--format", "csv")
        assert code == 0
        header, row = out.strip().split("\n")
        assert header.startswith("n,alpha,domain")
        assert row.startswith("3,0,sphere")

    def test_cap_domain(self, capsys):
        code, out, _ = run_cli(capsys, "constant", "--n", "3", "--alpha", "0",
                               "--domain", "cap:1.5707963267948966", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["positive"] is True
        assert data["M"] == pytest.approx(25 / 36, rel=1e-7)

    def test_bad_domain_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "constant", "--n", "3", "--alpha", "0",
                               "--domain", "cube:1")
        assert code == 2
        assert "bad domain" in err

    def test_bad_n_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "constant", "--n", "1", "--alpha", "0")
        assert code == 2

    def test_degenerate_routing_exit_3(self, capsys, monkeypatch):
        import rellich_cone.cli as cli_mod

        def boom(*a, **k):
            raise DegenerateModeError("routing failure")

        monkeypatch.setattr(cli_mod, "classify", boom)
        code, _, err = run_cli(capsys, "constant", "--n", "4", "--alpha", "0")
        assert code == 3
        assert "degenerate" in err


class TestScan:
    def test_csv_schema_and_radial_column(self, capsys):
        code, out, _ = run_cli(capsys, "scan", "--n", "5", "--alpha-from", "0",
                               "--alpha-to", "1", "--step", "0.25", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "alpha,delta_rad,M,numeric_delta,regime,certified"
        for line in lines[1:]:
            alpha, d_rad, m, nd, regime, certified = line.split(",")
            assert nd == ""  # numeric sweep not requested
            assert regime == "Radial" and certified == "true"
            assert m == d_rad  # M column equals delta_rad column exactly
        assert lines[1].split(",")[2] == "6.25"  # M(5, 0) = n^2/4

    def test_byte_determinism(self, capsys):
        args = ("scan", "--n", "3", "--alpha-from", "-1", "--alpha-to", "2",
                "--step", "0.3", "--format", "csv")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_json_mirrors_fields(self, capsys):
        code, out, _ = run_cli(capsys, "scan", "--n", "2", "--alpha-from", "0",
                               "--alpha-to", "1", "--step", "0.5", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert [r["alpha"] for r in rows] == [0.0, 0.5, 1.0]
        assert all(set(r) == {"alpha", "delta_rad", "M", "numeric_delta",
                              "regime", "certified"} for r in rows)
        assert all(r["certified"] for r in rows)  # n = 2: always certified

    def test_critical_row_absent_M(self, capsys):
        code, out, _ = run_cli(capsys, "scan", "--n", "4", "--alpha-from", "-0.5",
                               "--alpha-to", "0.5", "--step", "0.5", "--format", "csv")
        lines = out.strip().split("\n")
        critical = [l for l in lines[1:] if l.startswith("0,")]
        assert len(critical) == 1
        assert critical[0].split(",")[2] == ""  # M empty at the critical exponent

    def test_with_numeric_near_critical(self, capsys):
        # sweep across the n = 3 critical point: the numeric column is
        # populated and lands near min{(n-2)^2, n-1} = 1 at the critical row
        code, out, _ = run_cli(capsys, "scan", "--n", "3", "--alpha-from", "0.5",
                               "--alpha-to", "1.5", "--step", "0.5", "--format", "csv",
                               "--with-numeric", "--mode-l", "40", "--mode-n", "1600")
        assert code == 0
        lines = out.strip().split("\n")[1:]
        rows = {l.split(",")[0]: l.split(",") for l in lines}
        assert all(r[3] != "" for r in rows.values())
        critical_nd = float(rows["1"][3])
        assert critical_nd == pytest.approx(1.0, abs=5e-2)

    def test_table_format(self, capsys):
        code, out, _ = run_cli(capsys, "scan", "--n", "3", "--alpha-from", "0",
                               "--alpha-to", "0.5", "--step", "0.5")
        assert code == 0
        assert out.startswith("alpha")

    def test_bad_step_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "scan", "--n", "3", "--alpha-from", "0",
                               "--alpha-to", "1", "--step", "0")
        assert code == 2


class TestSpectrumCommand:
    def test_sphere(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--n", "3", "--count", "4")
        assert code == 0
        values = [float(line.split()[1]) for line in out.strip().split("\n")]
        assert values == [0.0, 2.0, 6.0, 12.0]

    def test_arc_json(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--n", "2", "--domain",
                               "arc:3.141592653589793", "--count", "3",
                               "--format", "json")
        data = json.loads(out)
        assert data["eigenvalues"] == pytest.approx([1.0, 4.0, 9.0])

    def test_explicit_file(self, capsys, tmp_path):
        path = tmp_path / "spec.txt"
        path.write_text("0.5\n2.5\n")
        code, out, _ = run_cli(capsys, "spectrum", "--n", "3", "--domain",
                               f"file:{path}", "--count", "2")
        assert code == 0
        assert "0.5" in out and "2.5" in out

    def test_missing_file_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "spectrum", "--n", "3", "--domain",
                               "file:/nonexistent.txt")
        assert code == 2


class TestVerifyCommand:
    def test_equivalence_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "equivalence")
        assert code == 0
        lines = out.strip().split("\n")
        assert sum(1 for l in lines if l.startswith("PASS")) == 12
        assert lines[-1].startswith("done:")

    def test_unknown_suite_rejected(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["verify", "everything"])
        assert err.value.code == 2

    def test_failing_check_names_itself_and_exits_1(self, capsys, monkeypatch):
        import rellich_cone.verify as verify_mod
        from rellich_cone.verify import CheckResult

        monkeypatch.setitem(
            verify_mod.SUITES, "radial",
            lambda cfg: [CheckResult("radial/forced", False, "injected failure")],
        )
        code, out, _ = run_cli(capsys, "verify", "radial")
        assert code == 1
        assert "FAIL radial/forced" in out

    def test_suite_registry(self):
        from rellich_cone.verify import SUITE_NAMES, suite_checks

        assert set(SUITE_NAMES) == {"constants", "lemmas", "equivalence",
                                    "radial", "witnesses", "spectra", "all"}
        with pytest.raises(ValueError):
            suite_checks("bogus")


class TestTransformCheckCommand:
    def test_default_corpus(self, capsys):
        code, out, _ = run_cli(capsys, "transform-check")
        assert code == 0
        assert out.count("PASS") == 12


class TestConfig:
    def test_defaults(self):
        cfg = Config()
        assert cfg.mode_L == 100.0 and cfg.mode_N == 8000

    def test_load_and_precedence(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text("# comment\nmode_L = 50\nk_max = 3\n")
        assert load_config(path) == {"mode_L": 50.0, "k_max": 3}
        cfg = resolve_config(path)
        assert cfg.mode_L == 50.0 and cfg.k_max == 3
        # explicit overrides beat the file
        cfg2 = resolve_config(path, {"mode_L": 75.0, "k_max": None})
        assert cfg2.mode_L == 75.0 and cfg2.k_max == 3

    def test_env_var_default(self, tmp_path, monkeypatch):
        path = tmp_path / "cfg.txt"
        path.write_text("scan_N = 1234\n")
        monkeypatch.setenv("RELLICH_CONE_CONFIG", str(path))
        assert resolve_config().scan_N == 1234

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text("bogus = 1\n")
        with pytest.raises(ValueError):
            load_config(path)

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text("mode_L\n")
        with pytest.raises(ValueError):
            load_config(path)

    def test_scan_honors_config_file(self, capsys, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text("scan_L = 30\nscan_N = 800\nk_max = 2\n")
        code, out, _ = run_cli(capsys, "--config", str(path), "scan", "--n", "3",
                               "--alpha-from", "0", "--alpha-to", "0", "--step", "1",
                               "--format", "csv", "--with-numeric")
        assert code == 0
        nd = out.strip().split("\n")[1].split(",")[3]
        assert nd != ""
