"""Base rendering functionality."""

from typing import Any, Optional

from rich.console import Console

from ..utils.serialization import serialize_to_json

# Reports go to stdout; logs, progress and errors go to stderr so that
# JSON output can be piped.
err_console = Console(stderr=True)


class BaseRenderer:
    """Base class for rendering results to the terminal."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()

    def render_json(self, data: Any) -> None:
        """Render data as deterministic JSON."""
        self.console.print(serialize_to_json(data), markup=False, highlight=False, soft_wrap=True)
