import json

import pytest
from click.testing import CliRunner

from kerrchain.cli import main
from kerrchain.experiments import REGIME_COLUMNS, TIME_SERIES_COLUMNS
from kerrchain.reporting import read_table


@pytest.fixture
def runner():
    return CliRunner()


class TestTopLevel:
    def test_no_arguments_prints_help(self, runner):
        result = runner.invoke(main, [])
        assert result.exit_code == 0
        assert "Usage:" in result.output

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0


class TestEvolveClosed:
    def test_writes_csv_with_schema(self, runner, tmp_path):
        out = tmp_path / "run.csv"
        result = runner.invoke(main, [
            "evolve-closed", "--n-points", "5", "-o", str(out)])
        assert result.exit_code == 0, result.output
        rows, config = read_table(out)
        assert len(rows) == 5
        for col in TIME_SERIES_COLUMNS:
            assert col in rows[0]
        assert config["damping"] == "none"
        assert config["provenance_n_points"] == "flag"
        assert config["provenance_alpha_over_chi"] == "default"

    def test_round_trip_values(self, runner, tmp_path):
        out = tmp_path / "run.csv"
        runner.invoke(main, ["evolve-closed", "--n-points", "3", "-o", str(out)])
        rows, _ = read_table(out)
        assert rows[0]["t_over_T"] == 0.0
        assert rows[0]["N_tri"] == 0.0
        assert rows[0]["subtype"] == "none"
        assert rows[1]["subtype"] == "III-1"

    def test_json_format(self, runner, tmp_path):
        out = tmp_path / "run.json"
        result = runner.invoke(main, [
            "evolve-closed", "--n-points", "3", "-o", str(out),
            "--format", "json"])
        assert result.exit_code == 0
        rows, _ = read_table(out)
        assert len(rows) == 3

    def test_figure_rendered(self, runner, tmp_path):
        out = tmp_path / "run.csv"
        fig = tmp_path / "run.png"
        result = runner.invoke(main, [
            "evolve-closed", "--n-points", "3", "-o", str(out),
            "--figure", str(fig)])
        assert result.exit_code == 0
        assert fig.stat().st_size > 0

    def test_explicit_branch_requires_epsilon(self, runner, tmp_path):
        result = runner.invoke(main, [
            "evolve-closed", "--epsilon-branch", "explicit",
            "-o", str(tmp_path / "x.csv")])
        assert result.exit_code == 2

    def test_explicit_epsilon_accepted(self, runner, tmp_path):
        out = tmp_path / "x.csv"
        result = runner.invoke(main, [
            "evolve-closed", "--epsilon-branch", "explicit",
            "--epsilon-over-alpha", "2.5", "--n-points", "3", "-o", str(out)])
        assert result.exit_code == 0
        rows, config = read_table(out)
        assert config["epsilon_over_alpha"] == "2.5"


class TestEvolveOpen:
    def test_requires_positive_kappa(self, runner, tmp_path):
        result = runner.invoke(main, [
            "evolve-open", "-o", str(tmp_path / "x.csv")])
        assert result.exit_code == 2
        assert "kappa" in result.output

    def test_damped_run(self, runner, tmp_path):
        out = tmp_path / "open.csv"
        result = runner.invoke(main, [
            "evolve-open", "--kappa-over-alpha", "0.1", "--n-points", "4",
            "-o", str(out)])
        assert result.exit_code == 0, result.output
        rows, config = read_table(out)
        assert config["damping"] == "amplitude"
        # damping spoils the perfect periodic return
        assert rows[-1]["N_tri"] > 1e-3


class TestSteadyState:
    def test_requires_positive_kappa(self, runner, tmp_path):
        result = runner.invoke(main, [
            "steady-state", "-o", str(tmp_path / "x.csv")])
        assert result.exit_code == 2

    def test_single_row(self, runner, tmp_path):
        out = tmp_path / "ss.csv"
        result = runner.invoke(main, [
            "steady-state", "--kappa-over-alpha", "0.2", "-o", str(out)])
        assert result.exit_code == 0, result.output
        rows, _ = read_table(out)
        assert len(rows) == 1
        assert rows[0]["kappa_over_alpha"] == 0.2


class TestSweepKappa:
    def test_sweep_with_regime_table(self, runner, tmp_path):
        out = tmp_path / "sweep.csv"
        regimes = tmp_path / "regimes.csv"
        result = runner.invoke(main, [
            "sweep-kappa", "--kappa-lo", "0.2", "--kappa-hi", "8.0",
            "--sweep-points", "25", "-o", str(out),
            "--regime-output", str(regimes)])
        assert result.exit_code == 0, result.output
        rows, _ = read_table(out)
        assert len(rows) == 25
        regime_rows, _ = read_table(regimes)
        assert set(regime_rows[0]) == set(REGIME_COLUMNS)
        assert len(regime_rows) >= 2
        # intervals tile the sweep range
        assert regime_rows[0]["kappa_over_alpha_lo"] == pytest.approx(0.2)
        assert regime_rows[-1]["kappa_over_alpha_hi"] == pytest.approx(8.0)


class TestClassifyState:
    def test_ghz_amplitudes(self, runner, tmp_path):
        state = tmp_path / "state.json"
        state.write_text(json.dumps([1, 0, 0, 0, 0, 0, 0, 1]))
        result = runner.invoke(main, ["classify-state", "--state-file", str(state)])
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["subtype"] == "III-0"
        assert report["N_tri"] == pytest.approx(1.0)

    def test_complex_pairs(self, runner, tmp_path):
        state = tmp_path / "state.json"
        # single excitation shared coherently between modes 1 and 3
        state.write_text(json.dumps([0, [1, 0], 0, 0, [0, 1], 0, 0, 0]))
        result = runner.invoke(main, ["classify-state", "--state-file", str(state)])
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["N_3_12"] == pytest.approx(1.0, abs=1e-10)

    def test_wrong_length_rejected(self, runner, tmp_path):
        state = tmp_path / "state.json"
        state.write_text(json.dumps([1, 0, 0]))
        result = runner.invoke(main, ["classify-state", "--state-file", str(state)])
        assert result.exit_code == 2

    def test_zero_norm_rejected(self, runner, tmp_path):
        state = tmp_path / "state.json"
        state.write_text(json.dumps([0] * 8))
        result = runner.invoke(main, ["classify-state", "--state-file", str(state)])
        assert result.exit_code == 2


class TestValidateTruncation:
    def test_explicit_branch_rejected(self, runner, tmp_path):
        result = runner.invoke(main, [
            "validate-truncation", "--epsilon-branch", "explicit",
            "--epsilon-over-alpha", "2.0", "-o", str(tmp_path / "x.csv")])
        assert result.exit_code == 2

    def test_small_truncation_run(self, runner, tmp_path):
        out = tmp_path / "val.csv"
        result = runner.invoke(main, [
            "validate-truncation", "--epsilon-branch", "plus", "--n-max", "2",
            "--n-points", "5", "-o", str(out)])
        assert result.exit_code == 0, result.output
        rows, _ = read_table(out)
        assert all(r["one_minus_F"] < 1e-2 for r in rows)


class TestConfigFile:
    def test_unknown_key_rejected(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"bogus_key": 1}))
        result = runner.invoke(main, [
            "evolve-closed", "--config", str(cfg), "-o", str(tmp_path / "x.csv")])
        assert result.exit_code == 2
        assert "bogus_key" in result.output

    def test_file_value_used_and_flag_wins(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n_points": 7, "t_end_in_t": 0.5}))
        out = tmp_path / "x.csv"
        result = runner.invoke(main, [
            "evolve-closed", "--config", str(cfg), "--t-end-in-T", "0.25",
            "-o", str(out)])
        assert result.exit_code == 0, result.output
        rows, config = read_table(out)
        assert len(rows) == 7
        assert config["provenance_n_points"] == "file"
        assert config["provenance_t_end_in_t"] == "flag"
        assert rows[-1]["t_over_T"] == pytest.approx(0.25)

    def test_malformed_json_rejected(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json")
        result = runner.invoke(main, [
            "evolve-closed", "--config", str(cfg), "-o", str(tmp_path / "x.csv")])
        assert result.exit_code == 2


class TestPreset:
    def test_unknown_preset_rejected(self, runner):
        result = runner.invoke(main, ["preset", "fig99"])
        assert result.exit_code != 0

    def test_ratio_preset_default_names(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["preset", "fig2"])
            assert result.exit_code == 0, result.output
            rows, config = read_table("fig2.csv")
            assert len(rows) == 401
            assert config["preset"] == "fig2"
            import os
            assert os.path.getsize("fig2.png") > 0

    def test_figure_skippable(self, runner, tmp_path):
        out = tmp_path / "r.csv"
        result = runner.invoke(main, [
            "preset", "fig2", "-o", str(out), "--figure", "none"])
        assert result.exit_code == 0
        assert out.exists()
