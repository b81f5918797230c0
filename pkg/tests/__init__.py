"""Tests for the nary package."""
