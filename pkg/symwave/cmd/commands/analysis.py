"""Symmetry and steadiness checks on snapshot directories."""

import click

from ...models.params import AnalysisThresholds
from ..utils import EXIT_NOT_STEADY, command_errors

THRESHOLD_OPTIONS = [
    click.option("--symmetric-threshold", type=float, default=None,
                 help="Asymmetry score below which a snapshot counts as symmetric"),
    click.option("--steady-threshold", type=float, default=None,
                 help="Shape error below which a series counts as steady"),
    click.option("--format", "-f", "output_format", default="json",
                 type=click.Choice(["table", "json"]), help="Output format"),
    click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
                 help="Also write the report JSON to this file"),
]


def threshold_options(func):
    for option in reversed(THRESHOLD_OPTIONS):
        func = option(func)
    return func


def _thresholds(symmetric, steady) -> AnalysisThresholds:
    values = {"symmetric": symmetric, "steady": steady}
    return AnalysisThresholds(**{k: v for k, v in values.items() if v is not None})


@click.command("check-symmetry")
@click.option("--in", "in_dir", required=True, type=click.Path(exists=True, file_okay=False),
              help="Directory of snapshot files")
@threshold_options
@click.pass_obj
def check_symmetry_cmd(obj, in_dir, symmetric_threshold, steady_threshold, output_format, report_path):
    """Track the axis of x-symmetry of every snapshot."""
    from ...core.analysis import symmetry_report
    from ...presentation import render_symmetry_report
    from ...utils.snapshots import read_series, write_report

    with command_errors(obj.debug):
        snapshots, _ = read_series(in_dir)
        report = symmetry_report(snapshots, _thresholds(symmetric_threshold, steady_threshold))
        if report_path:
            write_report(report_path, report)
        render_symmetry_report(report, format=output_format)


@click.command("check-steadiness")
@click.option("--in", "in_dir", required=True, type=click.Path(exists=True, file_okay=False),
              help="Directory of snapshot files")
@threshold_options
@click.pass_obj
def check_steadiness_cmd(obj, in_dir, symmetric_threshold, steady_threshold, output_format, report_path):
    """Decide whether a snapshot series is a wave of permanent form. Exits 1 unless steady."""
    from ...core.analysis import steadiness_report
    from ...presentation import render_steadiness_report
    from ...utils.snapshots import read_series, write_report

    with command_errors(obj.debug):
        snapshots, _ = read_series(in_dir)
        report = steadiness_report(snapshots, _thresholds(symmetric_threshold, steady_threshold))
        if report_path:
            write_report(report_path, report)
        render_steadiness_report(report, format=output_format)
    if report.verdict != "steady":
        raise click.exceptions.Exit(EXIT_NOT_STEADY)
