"""
Command Line Tests
Subcommand output, run files, exit statuses and the invariant suite
"""
import io
import json
import math

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner
from pydantic import ValidationError as PydanticValidationError

from src.cli import CheckResult, InvariantSuite, RunConfig, load_run_config
from src.cli.config import JCParams, OutputFormat, Subcommand, parse_complex
from src.cli.main import cli
from src.errors import InvalidParameterError


@pytest.fixture
def runner():
    """Runner with stderr kept apart from the artifact"""
    return CliRunner(mix_stderr=False)


def read_csv(text):
    return pd.read_csv(io.StringIO(text))


class TestStats:
    """Tests for the stats subcommand"""

    def test_su11_uniform(self, runner):
        """Test n = 2, m = 2 gives three rows of 1/3"""
        result = runner.invoke(cli, ["stats", "--n", "2", "--m", "2", "--algebra", "su11"])
        assert result.exit_code == 0, result.stderr
        assert result.stdout.splitlines()[0] == "k_1,k_2,probability"
        table = read_csv(result.stdout)
        assert table[["k_1", "k_2"]].values.tolist() == [[2, 0], [1, 1], [0, 2]]
        assert table["probability"].tolist() == pytest.approx([1 / 3] * 3, abs=1e-15)

    def test_weyl_json(self, runner):
        """Test the JSON document carries the schema tag and the rows"""
        result = runner.invoke(cli, ["stats", "--n", "2", "--m", "2", "--algebra", "weyl", "--format", "json"])
        assert result.exit_code == 0, result.stderr
        document = json.loads(result.stdout)
        assert document["schema"] == 1
        assert document["subcommand"] == "stats"
        assert [row["probability"] for row in document["rows"]] == pytest.approx([0.25, 0.5, 0.25])

    def test_json_floats_carry_17_digits(self, runner):
        """Test JSON floats are written with 17 significant digits"""
        result = runner.invoke(cli, ["stats", "--n", "2", "--m", "2", "--algebra", "su11", "--format", "json"])
        assert result.exit_code == 0, result.stderr
        assert result.stdout.count('"probability": 0.33333333333333331') == 3
        assert json.loads(result.stdout)["rows"][0]["probability"] == 1 / 3

    def test_output_file(self, runner, tmp_path):
        """Test --output writes the same bytes stdout would carry"""
        target = tmp_path / "dist.csv"
        to_file = runner.invoke(cli, ["stats", "--n", "3", "--m", "3", "--output", str(target)])
        to_stdout = runner.invoke(cli, ["stats", "--n", "3", "--m", "3"])
        assert to_file.exit_code == 0
        assert to_file.stdout == ""
        assert target.read_text() == to_stdout.stdout

    def test_deterministic(self, runner):
        """Test two identical runs are byte-identical"""
        args = ["stats", "--n", "4", "--m", "3", "--algebra", "weyl"]
        assert runner.invoke(cli, args).stdout == runner.invoke(cli, args).stdout

    def test_zero_modes(self, runner):
        """Test m = 0 exits with status 2"""
        result = runner.invoke(cli, ["stats", "--n", "2", "--m", "0"])
        assert result.exit_code == 2
        assert result.stderr.startswith("error:")


class TestOscillator:
    """Tests for the oscillator residual table"""

    def test_residual_table(self, runner):
        """Test every identity passes at the default kappas"""
        result = runner.invoke(cli, ["oscillator", "--cutoff", "40"])
        assert result.exit_code == 0, result.stderr
        table = read_csv(result.stdout)
        assert list(table.columns) == ["identity", "kappa", "cutoff", "residual"]
        assert (table["residual"] < 1e-9).all()
        assert set(table["kappa"].dropna()) == {0.5, 1.0, 1.5}
        assert table["identity"].str.startswith("schwinger").any()


class TestLorentz:
    """Tests for the lorentz summary"""

    def test_contrast(self, runner):
        """Test su(1,1) closes, h(1) escapes and the boost checks are reported"""
        result = runner.invoke(cli, ["lorentz", "--theta", "0.5"])
        assert result.exit_code == 0, result.stderr
        document = json.loads(result.stdout)
        assert document["schema"] == 1
        assert document["residual_su11"] < 1e-6
        assert document["residual_weyl"] > 1e-2
        checks = document["boost_checks"]
        assert checks["gamma"] == pytest.approx(math.cosh(0.25))
        assert checks["exp_map_error"] < 1e-12
        assert checks["hermiticity_error"] == 0.0

    def test_single_algebra(self, runner):
        """Test the unselected residual is null"""
        result = runner.invoke(cli, ["lorentz", "--algebra", "weyl"])
        assert result.exit_code == 0, result.stderr
        assert json.loads(result.stdout)["residual_su11"] is None


class TestJaynesCummings:
    """Tests for the jc subcommand"""

    def test_bg_closed_form_agrees(self, runner):
        """Test exact and closed-form inversion agree for the su(1,1) coupling"""
        result = runner.invoke(
            cli,
            ["jc", "--variant", "su11", "--eta", "2,0", "--coupling", "1", "--t-max", "6.2832",
             "--t-steps", "400", "--compare", "both", "--format", "json"],
        )
        assert result.exit_code == 0, result.stderr
        document = json.loads(result.stdout)
        assert document["initial"] == "barut-girardello"
        assert document["max_abs_err"] < 1e-8
        assert document["revival_period"] == pytest.approx(math.pi)
        assert len(document["rows"]) == 400

    def test_csv_columns(self, runner):
        """Test t, sz_exact, sz_closed and abs_err columns"""
        result = runner.invoke(cli, ["jc", "--variant", "linear", "--alpha", "2,0", "--t-steps", "50"])
        assert result.exit_code == 0, result.stderr
        table = read_csv(result.stdout)
        assert list(table.columns) == ["t", "sz_exact", "sz_closed", "abs_err"]
        assert table["sz_exact"].iloc[0] == pytest.approx(-0.5)
        assert table["abs_err"].max() < 1e-8

    def test_both_amplitudes(self, runner):
        """Test alpha and eta together exit with status 2"""
        result = runner.invoke(cli, ["jc", "--alpha", "1,0", "--eta", "1,0"])
        assert result.exit_code == 2
        assert "invalid parameter" in result.stderr

    def test_detuned_closed_form(self, runner):
        """Test closed forms away from resonance exit with status 2"""
        result = runner.invoke(cli, ["jc", "--omega0", "1.5", "--compare", "closed"])
        assert result.exit_code == 2

    def test_tail_guard(self, runner):
        """Test a heavy coherent tail exits with status 1"""
        result = runner.invoke(cli, ["jc", "--alpha", "9,0", "--cutoff", "40", "--compare", "exact"])
        assert result.exit_code == 1
        assert result.stderr.startswith("guard tail-mass")


class TestVerify:
    """Tests for the verify subcommand"""

    def test_fock_core(self, runner):
        """Test the fock-core checks pass"""
        result = runner.invoke(cli, ["verify", "--module", "fock-core"])
        assert result.exit_code == 0, result.stderr
        table = read_csv(result.stdout)
        assert set(table["module"]) == {"fock-core"}
        assert table["passed"].all()

    def test_unknown_module(self, runner):
        """Test an unknown module exits with status 2"""
        assert runner.invoke(cli, ["verify", "--module", "bogus"]).exit_code == 2

    def test_full_suite_is_reproducible(self, runner):
        """Test the full suite passes and two runs with different worker counts are byte-identical"""
        single = runner.invoke(cli, ["verify", "--workers", "1"])
        pooled = runner.invoke(cli, ["verify", "--workers", "4"])
        assert single.exit_code == 0, single.stderr
        assert pooled.exit_code == 0, pooled.stderr
        assert single.stdout == pooled.stdout
        table = read_csv(single.stdout)
        assert set(table["module"]) == set(InvariantSuite.MODULES)
        assert table["passed"].all()

    def test_rejects_zero_workers(self, runner):
        """Test --workers below 1 exits with status 2"""
        assert runner.invoke(cli, ["verify", "--workers", "0"]).exit_code == 2


class TestRunFile:
    """Tests for run --config"""

    def test_matches_flags(self, runner, tmp_path):
        """Test a YAML run file reproduces the flag invocation"""
        path = tmp_path / "run.yaml"
        path.write_text("subcommand: stats\nparameters:\n  n: 3\n  m: 2\n  algebra: weyl\n")
        from_file = runner.invoke(cli, ["run", "--config", str(path)])
        from_flags = runner.invoke(cli, ["stats", "--n", "3", "--m", "2", "--algebra", "weyl"])
        assert from_file.exit_code == 0, from_file.stderr
        assert from_file.stdout == from_flags.stdout

    def test_unknown_parameter(self, runner, tmp_path):
        """Test an unknown key exits with status 2"""
        path = tmp_path / "run.yaml"
        path.write_text("subcommand: stats\nparameters:\n  modes: 3\n")
        result = runner.invoke(cli, ["run", "--config", str(path)])
        assert result.exit_code == 2
        assert "modes" in result.stderr

    def test_malformed_yaml(self, runner, tmp_path):
        """Test a file that does not parse exits with status 2 and a one-line error"""
        path = tmp_path / "run.yaml"
        path.write_text("subcommand: [jc\n  alpha: 2")
        result = runner.invoke(cli, ["run", "--config", str(path)])
        assert result.exit_code == 2
        assert result.stderr.startswith("error: invalid config file")
        assert len(result.stderr.strip().splitlines()) == 1
        with pytest.raises(InvalidParameterError):
            load_run_config(path)

    def test_not_a_mapping(self, tmp_path):
        """Test a list document is rejected"""
        path = tmp_path / "run.yaml"
        path.write_text("- stats\n")
        with pytest.raises(InvalidParameterError):
            load_run_config(path)

    def test_format_defaults(self):
        """Test lorentz defaults to JSON and the rest to CSV"""
        assert RunConfig(subcommand="lorentz").resolved_format() is OutputFormat.JSON
        assert RunConfig(subcommand="jc").resolved_format() is OutputFormat.CSV
        assert RunConfig(subcommand="stats", format="json").resolved_format() is OutputFormat.JSON

    def test_parameters_validated_eagerly(self):
        """Test bad parameters fail when the run config is built"""
        with pytest.raises(PydanticValidationError):
            RunConfig(subcommand=Subcommand.JC, parameters={"t_steps": "many"})


class TestParameters:
    """Tests for parameter parsing"""

    @pytest.mark.parametrize(
        "raw,expected",
        [("3,0", (3.0, 0.0)), ("1.5", (1.5, 0.0)), ([0, 2], (0.0, 2.0)), (1 - 2j, (1.0, -2.0)), (None, None)],
    )
    def test_parse_complex(self, raw, expected):
        """Test the accepted spellings of a complex amplitude"""
        assert parse_complex(raw) == expected

    def test_malformed_complex(self):
        """Test a three-part value is rejected"""
        with pytest.raises(ValueError):
            parse_complex("1,2,3")

    def test_default_field(self):
        """Test a Glauber field with alpha = 3 is the default"""
        params = JCParams()
        assert params.glauber
        assert params.field_parameter == 3 + 0j


class TestInvariantSuite:
    """Tests for the suite plumbing"""

    def test_nan_fails(self):
        """Test a NaN value never passes"""
        assert not CheckResult("x", "fock-core", float("nan"), 1.0).passed
        assert CheckResult("x", "fock-core", 0.5, 1.0).passed
        assert CheckResult("x", "fock-core", 2.0, 1.0, relation=">").passed

    def test_unknown_module(self):
        """Test unknown module names are rejected"""
        with pytest.raises(InvalidParameterError):
            InvariantSuite().checks(["bogus"])

    def test_statistics_module(self):
        """Test the coproduct-stats checks pass and report as a frame"""
        report = InvariantSuite().run(["coproduct-stats"])
        assert report.all_passed
        frame = report.to_frame()
        assert list(frame.columns) == ["check", "module", "value", "relation", "bound", "passed"]
        assert np.isfinite(frame["value"]).all()
