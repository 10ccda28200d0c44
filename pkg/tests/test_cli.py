"""CLI surface: subcommands, config files, exit codes."""

import numpy as np
import pytest

from csdl.cli import EXIT_INPUT, EXIT_IO, EXIT_OK, main
from csdl.harness import read_table


def write_signal(path, values):
    path.write_text("value\n" + "\n".join(str(v) for v in values) + "\n")


class TestExperimentCommands:
    def test_exp4_runs(self, tmp_path, capsys):
        code = main(["exp4", "--trials", "2", "--out", str(tmp_path)])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "exp4_floor_N_over_10_trials.csv" in out
        assert (tmp_path / "exp4_floor_N_over_10_summary.csv").exists()

    def test_exp2_noise_flag_names_files(self, tmp_path):
        assert main(["exp2", "--trials", "1", "--noise", "correlated",
                     "--out", str(tmp_path)]) == EXIT_OK
        assert (tmp_path / "exp2_correlated_trials.csv").exists()

    def test_bad_flag_value(self, tmp_path):
        assert main(["exp1", "--profile", "huge", "--out", str(tmp_path)]) == EXIT_INPUT

    def test_bad_trials(self, tmp_path):
        assert main(["exp1", "--trials", "0", "--out", str(tmp_path)]) == EXIT_INPUT

    def test_missing_subcommand(self):
        assert main([]) == EXIT_INPUT

    def test_unknown_subcommand(self):
        assert main(["exp9"]) == EXIT_INPUT


class TestConfigFile:
    def test_defaults_from_file(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("trials = 2\nout = {}\n# comment line\nsparsity-rule = constant_5\n"
                       .format(tmp_path / "from_file"))
        assert main(["--config", str(cfg), "exp4"]) == EXIT_OK
        assert (tmp_path / "from_file" / "exp4_constant_5_trials.csv").exists()

    def test_flags_override_file(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(f"trials = 2\nout = {tmp_path / 'ignored'}\n")
        assert main(["--config", str(cfg), "exp4", "--out", str(tmp_path / "wins"),
                     "--trials", "1"]) == EXIT_OK
        assert (tmp_path / "wins" / "exp4_floor_N_over_10_trials.csv").exists()
        _, _, rows = read_table(tmp_path / "wins" / "exp4_floor_N_over_10_trials.csv")
        assert len(rows) == 2  # 2 grid points x 1 trial

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("no_such_flag = 1\n")
        assert main(["--config", str(cfg), "exp4"]) == EXIT_INPUT

    def test_malformed_line_rejected(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("trials 2\n")
        assert main(["--config", str(cfg), "exp4"]) == EXIT_INPUT

    def test_missing_config_file(self):
        assert main(["--config", "/nonexistent/x.cfg", "exp4"]) == EXIT_INPUT


class TestFitCommand:
    def test_fit_and_summarize_round_trip(self, tmp_path):
        signal = tmp_path / "y.csv"
        write_signal(signal, np.cos(np.linspace(0, 4, 30)))
        out = tmp_path / "fit"
        assert main(["fit", "--input", str(signal), "--n", "4", "--k", "2",
                     "--lambda", "3", "--out", str(out), "--sigma", "0.1"]) == EXIT_OK
        _, _, rows = read_table(out / "report.csv")
        keys = {r["key"] for r in rows}
        assert {"final_objective", "r_hat_l11", "ub_joint", "lb_joint"} <= keys

    def test_fit_requires_exactly_one_mode(self, tmp_path):
        signal = tmp_path / "y.csv"
        write_signal(signal, [1.0, 2.0, 3.0])
        assert main(["fit", "--input", str(signal), "--n", "2", "--k", "1",
                     "--lambda", "1", "--lambda-prime", "1"]) == EXIT_INPUT
        assert main(["fit", "--input", str(signal), "--n", "2", "--k", "1"]) == EXIT_INPUT

    def test_fit_missing_input_file(self, tmp_path):
        assert main(["fit", "--input", str(tmp_path / "nope.csv"), "--n", "2",
                     "--k", "1", "--lambda", "1"]) == EXIT_INPUT

    def test_fit_bad_signal_is_input_error(self, tmp_path):
        signal = tmp_path / "y.csv"
        signal.write_text("value\noops\n")
        assert main(["fit", "--input", str(signal), "--n", "1", "--k", "1",
                     "--lambda", "1"]) == EXIT_INPUT


class TestSummarizeCommand:
    def test_round_trip(self, tmp_path):
        assert main(["exp4", "--trials", "2", "--out", str(tmp_path)]) == EXIT_OK
        trials = tmp_path / "exp4_floor_N_over_10_trials.csv"
        assert main(["summarize", "--input", str(trials),
                     "--out", str(tmp_path / "again.csv")]) == EXIT_OK
        a = (tmp_path / "again.csv").read_bytes()
        b = (tmp_path / "exp4_floor_N_over_10_summary.csv").read_bytes()
        assert a == b

    def test_unwritable_output_is_io_error(self, tmp_path):
        assert main(["exp4", "--trials", "1", "--out", str(tmp_path)]) == EXIT_OK
        trials = tmp_path / "exp4_floor_N_over_10_trials.csv"
        blocker = tmp_path / "blocker"
        blocker.write_text("x")
        assert main(["summarize", "--input", str(trials),
                     "--out", str(blocker / "s.csv")]) == EXIT_IO

    def test_missing_input_is_input_error(self, tmp_path):
        assert main(["summarize", "--input", str(tmp_path / "no.csv"),
                     "--out", str(tmp_path / "s.csv")]) == EXIT_INPUT
