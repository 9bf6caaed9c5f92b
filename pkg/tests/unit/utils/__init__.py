"""Unit tests for symwave utilities."""
