"""Presentation layer for symwave CLI output."""

from .base import err_console
from .errors import render_error
from .reports import (
    render_branch,
    render_steadiness_report,
    render_symmetry_report,
    render_weak_residual,
    render_zero_set,
)

__all__ = [
    "err_console",
    "render_branch",
    "render_error",
    "render_steadiness_report",
    "render_symmetry_report",
    "render_weak_residual",
    "render_zero_set",
]
