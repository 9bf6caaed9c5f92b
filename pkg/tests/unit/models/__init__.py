"""Unit tests for symwave models."""
