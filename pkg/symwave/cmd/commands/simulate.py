"""Simulate command implementation."""

import logging
from pathlib import Path

import click

from ...config import load_experiment, record_experiment
from ...errors import BlowUpError
from ...models.config import RunConfig
from ..utils import command_errors, progress_bar

logger = logging.getLogger(__name__)

DIAGNOSTICS_FILE = "diagnostics.csv"


def _flush(out: Path, snapshots, diagnostics, model) -> None:
    from ...utils.snapshots import write_diagnostics, write_series

    write_series(out, snapshots, model)
    write_diagnostics(out / DIAGNOSTICS_FILE, diagnostics)
    logger.info(f"Wrote {len(snapshots)} snapshots and diagnostics to {out}")


@click.command("simulate")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False),
              help="Run configuration (JSON)")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False),
              help="Output directory for snapshots and diagnostics")
@click.pass_obj
def simulate_cmd(obj, config_path, out_dir):
    """Evolve initial data in time and write snapshots, diagnostics and OUT/config.json."""
    from ...core.timestep import simulate

    out = Path(out_dir)
    with command_errors(obj.debug):
        cfg = load_experiment(config_path, RunConfig)
        record_experiment(out, cfg)
        with progress_bar() as progress:
            task = progress.add_task("Simulating", total=None)

            def advance(done: int, total: int) -> None:
                progress.update(task, completed=done, total=total)

            try:
                snapshots, diagnostics = simulate(cfg, progress=advance)
            except BlowUpError as e:
                _flush(out, e.snapshots, e.diagnostics, cfg.model)
                raise
        _flush(out, snapshots, diagnostics, cfg.model)
