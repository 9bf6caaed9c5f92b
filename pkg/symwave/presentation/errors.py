"""Error rendering functionality."""

import traceback

from ..errors import ConfigError
from .base import err_console


def render_error(error, debug: bool = False) -> None:
    """
    Render an error to stderr.

    Args:
        error: Exception or error message
        debug: Whether to show the traceback
    """
    label = "Config error" if isinstance(error, ConfigError) else "Error"
    err_console.print(f"[bold red]{label}:[/bold red] {error}", highlight=False)

    if debug:
        err_console.print("[bold red]Traceback:[/bold red]")
        err_console.print(traceback.format_exc(), markup=False)
