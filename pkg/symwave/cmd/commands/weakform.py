"""Weak-form residual and peakon zero-set commands."""

from pathlib import Path

import click

from ...config import load_experiment
from ...models.config import PeakonScanConfig, WeakResidualConfig
from ..utils import command_errors


@click.command("weak-residual")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False),
              help="Weak-residual configuration (JSON)")
@click.option("--format", "-f", "output_format", default="table",
              type=click.Choice(["table", "json"]), help="Output format")
@click.pass_obj
def weak_residual_cmd(obj, config_path, output_format):
    """Evaluate a weak-form residual and print value ± quadrature estimate."""
    from ...core.weakform import evaluate_config
    from ...presentation import render_weak_residual

    with command_errors(obj.debug):
        cfg = load_experiment(config_path, WeakResidualConfig)
        render_weak_residual(evaluate_config(cfg), format=output_format)


@click.command("peakon-scan")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False),
              help="Peakon scan configuration (JSON)")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False),
              help="Output directory for zero_set.csv and zero_set_fit.json")
@click.option("--format", "-f", "output_format", default="table",
              type=click.Choice(["table", "json"]), help="Output format")
@click.pass_obj
def peakon_scan_cmd(obj, config_path, out_dir, output_format):
    """Scan peakon amplitude and speed for vanishing steady weak residuals."""
    from ...core.weakform import default_basis, peakon_scan
    from ...presentation import render_zero_set
    from ...utils.snapshots import write_zero_set

    with command_errors(obj.debug):
        cfg = load_experiment(config_path, PeakonScanConfig)
        basis = cfg.basis or default_basis(cfg.theta, cfg.basis_lattice)
        zero_set = peakon_scan(cfg.theta, cfg.kappa, cfg.a_grid, cfg.c_grid, psi_basis=basis,
                               threshold=cfg.threshold, config=cfg.quadrature)
        write_zero_set(Path(out_dir), zero_set)
        render_zero_set(zero_set, format=output_format)
