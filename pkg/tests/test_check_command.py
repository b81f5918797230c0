"""Tests for the check command."""

import re
from unittest.mock import patch

import pytest
from typer.testing import CliRunner

from nary_python_cli.cli import app
from nary_python_cli.commands.check import parse_subspace
from nary_python_cli.utils.errors import InputError
from nary_python_cli.utils.properties import PropertyVerdict, SearchBudget

runner = CliRunner()


def strip_ansi(text):
    """Remove ANSI escape sequences from text."""
    ansi_escape = re.compile(r"\x1b\[[0-9;]*m")
    return ansi_escape.sub("", text)


@pytest.fixture(autouse=True)
def _isolated_config(temp_config):
    """Run every check against the packaged defaults."""


def test_check_help():
    """Test that the check help lists the properties."""
    result = runner.invoke(app, ["check", "--help"])
    assert result.exit_code == 0
    output = strip_ansi(result.stdout)
    assert "--property" in output
    assert "subalgebraic" in output


def test_check_subalgebraic_holds(nu_file):
    """Test that nu is subalgebraic."""
    result = runner.invoke(app, ["check", "--property", "subalgebraic", str(nu_file)])
    assert result.exit_code == 0
    assert "✅ holds: subalgebraic" in result.stdout


def test_check_subalgebraic_fails_with_certificate(a3_file):
    """Test the A3 certificate e1 e1 = e2."""
    result = runner.invoke(app, ["check", "--property", "subalgebraic", str(a3_file)])
    assert result.exit_code == 1
    assert "❌ fails: subalgebraic" in result.stdout
    assert "  arguments: (1, 0), (1, 0)" in result.stdout
    assert "  product:   (0, 1)" in result.stdout
    assert "  V1 = <(1, 0)>" in result.stdout


def test_check_options_after_file(nu_file):
    """Test that options may follow the structure file."""
    result = runner.invoke(app, ["check", str(nu_file), "--property", "subalgebraic"])
    assert result.exit_code == 0


def test_check_anticommutative(n3_file):
    """Test that n3 is (1,1)-anticommutative."""
    result = runner.invoke(app, ["check", "--property", "anticommutative", "--partition", "(1,1)", str(n3_file)])
    assert result.exit_code == 0
    assert "✅ holds: (1,1)-anticommutative" in result.stdout


def test_check_anticommutative_needs_partition(n3_file):
    """Test that a partition-indexed property without --partition is an input error."""
    result = runner.invoke(app, ["check", "--property", "anticommutative", str(n3_file)])
    assert result.exit_code == 2
    assert "needs --partition" in result.stderr


def test_check_attractive_fails(a3_file):
    """Test that A3 is not (1)-attractive."""
    result = runner.invoke(app, ["check", "--property", "attractive", "--partition", "1", str(a3_file)])
    assert result.exit_code == 1
    assert "❌ fails: (1)-attractive" in result.stdout


def test_check_minimal_presentation(n3_file):
    """Test the (1,1)-minimal presentation of n3."""
    result = runner.invoke(
        app, ["check", "--property", "minimal-presentation", "--partition", "(1,1)", str(n3_file)]
    )
    assert result.exit_code == 0
    assert "✅ holds: (1,1)-minimal presentation" in result.stdout


def test_check_attractive_presentation(nu_file):
    """Test the maximally (1)-attractive presentation of nu."""
    result = runner.invoke(
        app, ["check", "--property", "attractive-presentation", "--partition", "(1)", str(nu_file)]
    )
    assert result.exit_code == 0
    assert "✅ holds: maximally (1)-attractive presentation" in result.stdout


def test_check_k_subalgebra(nu_file, a3_file):
    """Test <e1> in nu and in A3."""
    args = ["check", "--property", "k-subalgebra", "--subspace", "1,0", "--k", "2"]
    result = runner.invoke(app, [*args, str(nu_file)])
    assert result.exit_code == 0
    assert "✅ holds: k-subalgebra" in result.stdout
    result = runner.invoke(app, [*args, str(a3_file)])
    assert result.exit_code == 1


def test_check_k_subalgebra_needs_subspace(nu_file):
    """Test that k-subalgebra needs --subspace and --k."""
    result = runner.invoke(app, ["check", "--property", "k-subalgebra", "--k", "2", str(nu_file)])
    assert result.exit_code == 2
    assert "needs --subspace and --k" in result.stderr


def test_check_form(a3_file, nu_file, zero_file):
    """Test the form property on A3, nu and the zero structure."""
    assert runner.invoke(app, ["check", "--property", "form", str(a3_file)]).exit_code == 0
    result = runner.invoke(app, ["check", "--property", "form", str(nu_file)])
    assert result.exit_code == 1
    assert "❌ fails: form algebra" in result.stdout
    assert runner.invoke(app, ["check", "--property", "form", str(zero_file)]).exit_code == 1


def test_check_unknown_property(nu_file):
    """Test that an unknown property exits with 2."""
    result = runner.invoke(app, ["check", "--property", "commutative", str(nu_file)])
    assert result.exit_code == 2
    assert "unknown property" in result.stderr


def test_check_parse_error(write_structure_file):
    """Test that a malformed file reports its location on stderr."""
    path = write_structure_file("nary-structure v1\nn=2 m=2\n[1,3] -> 1 : 1\n")
    result = runner.invoke(app, ["check", "--property", "subalgebraic", str(path)])
    assert result.exit_code == 2
    assert f"❌ Parse error: {path}:3:4:" in result.stderr


def test_check_missing_file(tmp_path):
    """Test that a missing file is a usage error."""
    result = runner.invoke(app, ["check", "--property", "subalgebraic", str(tmp_path / "missing")])
    assert result.exit_code == 2


def test_check_sampled_agrees(n3_file):
    """Test that the sampled oracle finds no violation in n3."""
    result = runner.invoke(
        app,
        ["check", "--property", "anticommutative", "--partition", "(1,1)", "--sampled", "--trials", "30", str(n3_file)],
    )
    assert result.exit_code == 0
    assert "✅ sampled: no violation in 30 trials" in result.stdout


def test_check_sampled_violation(squares_file):
    """Test that sampling reports a violation when the property fails."""
    result = runner.invoke(
        app, ["--seed", "2", "check", "--property", "subalgebraic", "--sampled", "--trials", "200", str(squares_file)]
    )
    assert result.exit_code == 1
    assert "⚠️  sampled: violation found" in result.stdout


def test_parse_subspace():
    """Test spanning vectors separated by semicolons."""
    subspace = parse_subspace("1,0,0; 0,1,0;", 3)
    assert subspace.dimension == 2
    with pytest.raises(InputError):
        parse_subspace("1,x", 2)


def test_check_fails_without_counterexample(a3_file):
    """Test that a failing verdict without a certificate still exits 1."""
    verdict = PropertyVerdict(False, None, "subalgebraic")
    with patch("nary_python_cli.commands.check.is_subalgebraic", return_value=verdict):
        result = runner.invoke(app, ["check", "--property", "subalgebraic", str(a3_file)])
    assert result.exit_code == 1
    assert "❌ fails: subalgebraic (no explicit counterexample found)" in result.stdout
    assert "arguments:" not in result.stdout


def test_check_empty_retry_budget(a3_file):
    """Test that a zero retry budget decides the property without a counterexample."""
    with patch("nary_python_cli.commands.check.get_context_budget", return_value=SearchBudget(retries=0)):
        result = runner.invoke(app, ["check", "--property", "attractive", "--partition", "(1)", str(a3_file)])
    assert result.exit_code == 1
    assert "❌ fails: (1)-attractive (no explicit counterexample found)" in result.stdout
