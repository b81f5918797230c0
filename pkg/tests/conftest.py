"""Pytest configuration and shared fixtures."""

import pytest
from typer.testing import CliRunner

from nary_python_cli.utils.structures import AlgebraStructure

A3 = AlgebraStructure(2, 2, {(1, 1): {2: 1}})
N3 = AlgebraStructure(2, 3, {(1, 2): {3: 1}, (2, 1): {3: -1}})
NU2 = AlgebraStructure(2, 2, {(1, 1): {1: 1}, (1, 2): {2: 2}, (2, 1): {2: -1}})
SQUARES = AlgebraStructure(2, 2, {(1, 1): {1: 1}, (2, 2): {1: 1}})

N3_TEXT = """nary-structure v1
n=2 m=3
[1,2] -> 3 : 1
[2,1] -> 3 : -1
"""

NU_TEXT = """nary-structure v1
n=2 m=2
[1,1] -> 1 : 1
[1,2] -> 2 : 2
[2,1] -> 2 : -1
"""

A3_TEXT = """nary-structure v1
n=2 m=2
[1,1] -> 2 : 1
"""

SQUARES_TEXT = """nary-structure v1
n=2 m=2
[1,1] -> 1 : 1
[2,2] -> 1 : 1
"""

ZERO_TEXT = """nary-structure v1
n=2 m=2
"""


@pytest.fixture
def cli_runner():
    """Provide a CLI runner for testing."""
    return CliRunner()


@pytest.fixture
def write_structure_file(tmp_path):
    """Write structure text to a file in tmp_path and return its path."""

    def _write(text, name="algebra.structure"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


@pytest.fixture
def n3_file(write_structure_file):
    return write_structure_file(N3_TEXT, "n3.structure")


@pytest.fixture
def nu_file(write_structure_file):
    return write_structure_file(NU_TEXT, "nu.structure")


@pytest.fixture
def a3_file(write_structure_file):
    return write_structure_file(A3_TEXT, "a3.structure")


@pytest.fixture
def squares_file(write_structure_file):
    return write_structure_file(SQUARES_TEXT, "squares.structure")


@pytest.fixture
def zero_file(write_structure_file):
    return write_structure_file(ZERO_TEXT, "zero.structure")


@pytest.fixture
def temp_config(tmp_path, monkeypatch):
    """Point the user config at a temporary file and clear NARY_SEED."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.delenv("NARY_SEED", raising=False)
    return tmp_path / ".config" / "nary-python-cli" / "config.toml"
