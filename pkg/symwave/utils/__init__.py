"""Utility functions for symwave."""
