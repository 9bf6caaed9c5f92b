"""Unit tests for the numerical core."""
