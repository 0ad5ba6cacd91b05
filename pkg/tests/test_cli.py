"""Command-line surface: subcommands, exit codes, file outputs, streams."""

import json
import os

import pytest

from sqzbudget import parse_config
from sqzbudget.cli import EXIT_CONFIG, EXIT_OK, EXIT_ORACLE, main


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


class TestBudget:
    def test_default_run_writes_three_files(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["budget", "--out", str(out)]) == EXIT_OK
        assert sorted(os.listdir(out)) == ["budget.csv", "spectrum.svg", "summary.json"]
        captured = capsys.readouterr()
        payload = json.loads(captured.out)
        assert payload["schema_version"] == 1
        assert all("wrote" in line for line in captured.err.strip().splitlines())

    def test_single_format(self, tmp_path):
        out = tmp_path / "out"
        assert main(["budget", "--out", str(out), "--format", "csv"]) == EXIT_OK
        assert os.listdir(out) == ["budget.csv"]

    def test_byte_identical_reruns(self, tmp_path, capsys):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        assert main(["budget", "--out", str(out_a)]) == EXIT_OK
        assert main(["budget", "--out", str(out_b)]) == EXIT_OK
        capsys.readouterr()
        for name in ("budget.csv", "summary.json", "spectrum.svg"):
            assert read(out_a / name) == read(out_b / name)

    def test_bad_config_value_exits_2_and_names_key(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("eta_total = 1.3\n", encoding="utf-8")
        code = main(["budget", "--config", str(cfg), "--out", str(tmp_path / "o")])
        assert code == EXIT_CONFIG
        err = capsys.readouterr().err
        assert "eta_total" in err

    def test_missing_config_file_exits_2(self, tmp_path, capsys):
        code = main(["budget", "--config", str(tmp_path / "nope.cfg")])
        assert code == EXIT_CONFIG
        assert "nope.cfg" in capsys.readouterr().err

    def test_config_override_changes_the_budget(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("squeeze_db = 6\nantisqueeze_db = 12\n", encoding="utf-8")
        out = tmp_path / "o"
        assert main(["budget", "--config", str(cfg), "--out", str(out), "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["injected"]["squeeze_db"] == 6


class TestLedger:
    def test_writes_table(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["ledger", "--out", str(out)]) == EXIT_OK
        text = capsys.readouterr().out
        assert (out / "ledger.csv").exists()
        for stage in ("sr_cavity", "output_mode_cleaner", "detection"):
            assert stage in text
        assert "eta_total = 0.62" in text  # override note against the 0.648 product


class TestSweep:
    def test_eta_sweep(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(
            ["sweep", "--axis", "eta", "--values", "0.5,0.62,0.8", "--out", str(out)]
        )
        assert code == EXIT_OK
        assert sorted(os.listdir(out)) == ["sweep.csv", "sweep.json"]
        lines = capsys.readouterr().out.strip().splitlines()
        data = [float(l.split(",")[1]) for l in lines if not l.startswith(("#", "value"))]
        assert data == sorted(data)

    def test_solve_required_efficiency(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(
            ["sweep", "--solve-improvement-db", "6.0", "--out", str(out), "--format", "json"]
        )
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["required_eta"]["eta"] == pytest.approx(0.833, abs=1e-3)

    def test_invalid_value_exits_2_with_index(self, tmp_path, capsys):
        code = main(["sweep", "--axis", "eta", "--values", "0.5,1.3", "--out", str(tmp_path / "o")])
        assert code == EXIT_CONFIG
        assert "[1]" in capsys.readouterr().err

    def test_needs_values_or_solve(self, tmp_path, capsys):
        assert main(["sweep", "--out", str(tmp_path / "o")]) == EXIT_CONFIG


class TestOracle:
    def test_passes_at_default_seed(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["oracle", "--out", str(out), "--samples", "50000"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["all_passed"] is True
        assert (out / "oracle.json").exists()

    def test_statistical_failure_exits_3(self, tmp_path, capsys):
        # seed 23 at n = 10^4 is a known 3-sigma outlier in one check
        code = main(
            ["oracle", "--out", str(tmp_path / "o"), "--seed", "23", "--samples", "10000"]
        )
        assert code == EXIT_ORACLE
        captured = capsys.readouterr()
        assert "failed" in captured.err
        assert json.loads(captured.out)["all_passed"] is False

    def test_undersized_run_is_a_config_error(self, tmp_path):
        code = main(["oracle", "--out", str(tmp_path / "o"), "--samples", "100"])
        assert code == EXIT_CONFIG


class TestPreset:
    def test_round_trips_through_the_parser(self, capsys):
        assert main(["preset"]) == EXIT_OK
        text = capsys.readouterr().out
        cfg = parse_config(text)
        assert cfg == parse_config("")
        assert "arm_length_eff" in text

    def test_no_color_strips_escape_codes(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("NO_COLOR", "1")
        code = main(["budget", "--config", str(tmp_path / "missing.cfg")])
        assert code == EXIT_CONFIG
        assert "\x1b[" not in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "budget" in capsys.readouterr().out


def test_unknown_command_exits_2(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()
