"""Exit codes, error mapping and progress display for commands."""

import logging
from contextlib import contextmanager
from typing import Iterator

import click
from pydantic import ValidationError
from rich.progress import BarColumn, Progress, TextColumn, TimeRemainingColumn

from ...errors import ConfigError, SymwaveError
from ...models.base import error_key_path
from ...presentation import err_console, render_error

logger = logging.getLogger(__name__)

EXIT_NOT_STEADY = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


@contextmanager
def command_errors(debug: bool = False) -> Iterator[None]:
    """
    Map symwave errors to exit codes.

    ConfigError and pydantic ValidationError exit with 2, showing the key
    path; every other SymwaveError exits with 3.
    """
    try:
        yield
    except ValidationError as e:
        render_error(ConfigError(e.errors()[0]["msg"], key_path=error_key_path(e)), debug)
        raise click.exceptions.Exit(EXIT_CONFIG)
    except ConfigError as e:
        render_error(e, debug)
        raise click.exceptions.Exit(EXIT_CONFIG)
    except SymwaveError as e:
        render_error(e, debug)
        raise click.exceptions.Exit(EXIT_NUMERICAL)


def progress_bar() -> Progress:
    return Progress(
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("{task.completed}/{task.total}"),
        TimeRemainingColumn(),
        console=err_console,
        transient=True,
    )
