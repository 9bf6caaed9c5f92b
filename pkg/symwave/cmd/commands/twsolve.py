"""Traveling-wave solver command implementation."""

import logging
from pathlib import Path

import click

from ...config import load_experiment, record_experiment
from ...models.config import TwSolveConfig
from ...models.grid import Snapshot
from ..utils import command_errors

logger = logging.getLogger(__name__)


@click.command("tw-solve")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False),
              help="Traveling-wave configuration (JSON)")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False),
              help="Output directory")
@click.option("--format", "-f", "output_format", default="table",
              type=click.Choice(["table", "json"]), help="Output format")
@click.pass_obj
def tw_solve_cmd(obj, config_path, out_dir, output_format):
    """
    Compute a traveling wave and optionally continue it in amplitude.

    Writes the first profile to OUT/profile, every branch profile to
    OUT/branch, the (A, c, residual) table to OUT/branch.csv and the
    validated configuration to OUT/config.json.
    """
    from ...core.twsolve import continue_branch, linear_speed, seed_wave, solve_tw
    from ...presentation import render_branch
    from ...utils.snapshots import write_branch, write_series

    out = Path(out_dir)
    with command_errors(obj.debug):
        cfg = load_experiment(config_path, TwSolveConfig)
        record_experiment(out, cfg)
        seed = seed_wave(cfg.grid, cfg.amplitude, cfg.mode)
        c0 = cfg.c0 if cfg.c0 is not None else linear_speed(cfg.grid, cfg.model, cfg.mode)
        logger.info(f"Seeding {cfg.model.tag} traveling wave: A={cfg.amplitude}, mode={cfg.mode}, c0={c0:.10g}")
        wave = solve_tw(seed, c0, cfg.model, tol=cfg.tol, max_iter=cfg.max_iter)
        branch = [wave]
        if cfg.continuation.steps:
            branch = continue_branch(wave, cfg.continuation.d_amplitude, cfg.continuation.steps,
                                     tol=cfg.tol, max_iter=cfg.max_iter)

        write_series(out / "profile", [Snapshot(0.0, wave.profile)], cfg.model)
        write_series(out / "branch", [Snapshot(0.0, w.profile) for w in branch], cfg.model)
        write_branch(out / "branch.csv", branch)
        render_branch(branch, format=output_format)
