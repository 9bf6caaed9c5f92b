"""Report rendering functionality."""

from typing import Sequence

from rich.table import Table

from ..models.reports import SteadinessReport, SymmetryReport, TravelingWave, WeakResidual, ZeroSet
from .base import BaseRenderer

VERDICT_STYLE = {"steady": "green", "not-steady": "red", "inconclusive": "yellow"}


def _render(renderer: BaseRenderer, report, format: str) -> None:
    if format == "json":
        renderer.render_json(report)
    else:
        renderer.render_table(report)


def render_symmetry_report(report: SymmetryReport, format: str = "json") -> None:
    """
    Render a symmetry report.

    Args:
        report: Symmetry report
        format: Output format ("table" or "json")
    """
    _render(SymmetryReportRenderer(), report, format)


def render_steadiness_report(report: SteadinessReport, format: str = "json") -> None:
    _render(SteadinessReportRenderer(), report, format)


def render_weak_residual(result: WeakResidual, format: str = "table") -> None:
    if format == "json":
        BaseRenderer().render_json(result)
    else:
        BaseRenderer().console.print(f"{result.value:.17g} ± {result.quadrature_error_estimate:.3e}",
                                     highlight=False)


def render_zero_set(zero_set: ZeroSet, format: str = "table") -> None:
    _render(ZeroSetRenderer(), zero_set, format)


def render_branch(branch: Sequence[TravelingWave], format: str = "table") -> None:
    renderer = BranchRenderer()
    if format == "json":
        renderer.render_json([wave.branch_point() for wave in branch])
    else:
        renderer.render_table(branch)


class SymmetryReportRenderer(BaseRenderer):
    """Renderer for symmetry reports."""

    def render_table(self, report: SymmetryReport) -> None:
        verdict = "[green]symmetric[/green]" if report.symmetric else "[red]asymmetric[/red]"
        self.console.print(f"[bold blue]Symmetry Report[/bold blue]  {verdict}")
        self.console.print(
            f"Axis speed: [bold]{report.lambda_dot_estimate:.10g}[/bold], "
            f"curvature: [bold]{report.lambda_curvature:.3e}[/bold], "
            f"max asymmetry: [bold]{report.max_asymmetry:.3e}[/bold]"
        )
        table = Table()
        table.add_column("t", style="cyan", justify="right")
        table.add_column("axis", style="green", justify="right")
        table.add_column("asymmetry", style="magenta", justify="right")
        for (t, lam), (_, score) in zip(report.lambda_of_t, report.asymmetry_of_t):
            table.add_row(f"{t:.6g}", f"{lam:.10g}", f"{score:.3e}")
        self.console.print(table)


class SteadinessReportRenderer(BaseRenderer):
    """Renderer for steadiness reports."""

    def render_table(self, report: SteadinessReport) -> None:
        style = VERDICT_STYLE[report.verdict]
        self.console.print(f"[bold blue]Steadiness Report[/bold blue]  [{style}]{report.verdict}[/{style}]")
        self.console.print(f"Speed: [bold]{report.speed_estimate:.10g}[/bold], "
                           f"max shape error: [bold]{report.max_shape_error:.3e}[/bold]")
        table = Table()
        table.add_column("t", style="cyan", justify="right")
        table.add_column("shape error", style="magenta", justify="right")
        for t, error in report.shape_error_of_t:
            table.add_row(f"{t:.6g}", f"{error:.3e}")
        self.console.print(table)


class ZeroSetRenderer(BaseRenderer):
    """Renderer for peakon zero sets."""

    def render_table(self, zero_set: ZeroSet) -> None:
        self.console.print(f"[bold blue]Peakon zero set[/bold blue] theta={zero_set.theta:g}, "
                           f"kappa={zero_set.kappa:g}")
        if zero_set.slope is not None:
            self.console.print(f"Fit: c = {zero_set.slope:.8g} a + {zero_set.intercept:.8g} "
                               f"(residual {zero_set.fit_residual:.2e})")
        table = Table(title="Optimal speed per amplitude")
        table.add_column("a", style="cyan", justify="right")
        table.add_column("c*", style="green", justify="right")
        table.add_column("R", style="magenta", justify="right")
        table.add_column("member", style="yellow")
        for point in zero_set.best:
            member = "yes" if point.ratio < zero_set.threshold else "no"
            table.add_row(f"{point.a:.6g}", f"{point.c:.10g}", f"{point.ratio:.3g}", member)
        self.console.print(table)


class BranchRenderer(BaseRenderer):
    """Renderer for traveling-wave branches."""

    def render_table(self, branch: Sequence[TravelingWave]) -> None:
        if not branch:
            self.console.print("[yellow]No traveling waves converged[/yellow]")
            return
        table = Table(title=f"Traveling waves ({branch[0].model.tag})")
        table.add_column("A", style="cyan", justify="right")
        table.add_column("c", style="green", justify="right")
        table.add_column("residual", style="magenta", justify="right")
        for wave in branch:
            table.add_row(f"{wave.amplitude:.6g}", f"{wave.speed:.15g}", f"{wave.residual_norm:.2e}")
        self.console.print(table)
