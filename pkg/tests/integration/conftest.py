"""Fixtures for integration tests."""

import pytest

from nary_python_cli.utils.properties import SearchBudget


@pytest.fixture
def integration_workspace(tmp_path):
    """Create a temporary workspace for integration tests."""
    workspace = tmp_path / "integration_workspace"
    workspace.mkdir()
    return workspace


@pytest.fixture
def budget():
    """A fixed search budget so failures reproduce."""
    return SearchBudget(seed=0)
