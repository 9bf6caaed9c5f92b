"""Shared helpers for symwave commands."""

from .running import EXIT_CONFIG, EXIT_NOT_STEADY, EXIT_NUMERICAL, command_errors, progress_bar

__all__ = ["EXIT_CONFIG", "EXIT_NOT_STEADY", "EXIT_NUMERICAL", "command_errors", "progress_bar"]
