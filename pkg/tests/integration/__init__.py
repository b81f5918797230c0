"""Integration tests for nary-python-cli."""
