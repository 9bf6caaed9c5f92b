"""Command-line interface for symwave."""

from .main import cli

__all__ = ["cli"]
