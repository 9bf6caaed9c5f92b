"""Main CLI implementation for symwave."""

import logging

import click
from rich.logging import RichHandler

from ..core.spectral import set_workers
from ..presentation import err_console
from .commands.analysis import check_steadiness_cmd, check_symmetry_cmd
from .commands.simulate import simulate_cmd
from .commands.transform import transform_cmd
from .commands.twsolve import tw_solve_cmd
from .commands.weakform import peakon_scan_cmd, weak_residual_cmd


class SymwaveContext:
    """State shared by all subcommands."""

    def __init__(self, debug_level: str = "none", deterministic: bool = False):
        self.debug_level = debug_level
        self.deterministic = deterministic

    @property
    def debug(self) -> bool:
        return self.debug_level == "verbose"


def setup_logging(level_name: str) -> int:
    """Configure logging based on debug level."""
    level_map = {
        "none": logging.WARNING,
        "error": logging.ERROR,
        "info": logging.INFO,
        "verbose": logging.DEBUG,
    }
    level = level_map.get(level_name.lower(), logging.WARNING)

    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(rich_tracebacks=True, console=err_console)],
    )
    logging.getLogger("symwave").setLevel(level)

    if level_name.lower() != "none":
        logging.debug(f"Debug mode: {level_name.upper()}")
    return level


@click.group()
@click.version_option(package_name="symwave")
@click.option("--debug", "-d",
              type=click.Choice(["none", "error", "info", "verbose"], case_sensitive=False),
              default="none",
              help="Set debug output level")
@click.option("--deterministic", is_flag=True,
              help="Use a single FFT worker so repeated runs are bit-identical")
@click.pass_context
def cli(ctx, debug, deterministic):
    """symwave - symmetry and steadiness experiments for 2D dispersive wave models."""
    ctx.obj = SymwaveContext(debug, deterministic)
    setup_logging(debug)
    set_workers(1 if deterministic else -1)


cli.add_command(simulate_cmd)
cli.add_command(check_symmetry_cmd)
cli.add_command(check_steadiness_cmd)
cli.add_command(tw_solve_cmd)
cli.add_command(weak_residual_cmd)
cli.add_command(peakon_scan_cmd)
cli.add_command(transform_cmd)

if __name__ == "__main__":
    cli()
