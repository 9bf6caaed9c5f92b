"""
Integrating-factor Runge-Kutta time evolution.

The linear dispersion is integrated exactly through phase factors
exp(-i omega dt); only the nonlinear flux is advanced by classical RK4
(the Lawson form of IF-RK4).
"""

import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..errors import BlowUpError, ZeroFieldError, SpeedUndefinedError
from ..models.config import RunConfig
from ..models.grid import Field2D, Grid2D, Snapshot
from ..models.reports import DiagnosticsRow, DiagnosticsSeries
from .equations import EvolutionParams, _require_evolution_model, nonlinear_hat, omega_grid
from .initial import build_initial
from .spectral import check_admissible, fft2, ifft2, l2_norm_hat, shift_hat

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int], None]


def stability_bound(u: Field2D) -> float:
    """Advective time-step heuristic 0.5*dx/max|u| (inf for the zero field)."""
    peak = u.max_abs()
    return math.inf if peak == 0 else 0.5 * u.grid.dx / peak


class IntegratingFactorRK4:
    """
    IF-RK4 stepper for one model on one grid with a fixed dt.

    Phase factors are computed once per (grid, model, dt).
    """

    def __init__(self, grid: Grid2D, p: EvolutionParams, dt: float):
        _require_evolution_model(p)
        self.grid = grid
        self.p = p
        self.dt = dt
        omega = omega_grid(grid, p)
        self.full = np.exp(-1j * omega * dt)
        self.half = np.exp(-0.5j * omega * dt)
        keep = np.ones(grid.shape)
        keep[:, 0] = 0.0
        keep[:, grid.nx // 2] = 0.0
        self.keep = keep

    def _n(self, u_hat: np.ndarray) -> np.ndarray:
        return nonlinear_hat(u_hat, self.grid, self.p)

    def step_hat(self, u_hat: np.ndarray) -> np.ndarray:
        """Advance spectral coefficients by one step."""
        dt, full, half = self.dt, self.full, self.half
        k1 = self._n(u_hat)
        k2 = self._n(half * (u_hat + 0.5 * dt * k1))
        k3 = self._n(half * u_hat + 0.5 * dt * k2)
        k4 = self._n(full * u_hat + dt * half * k3)
        new_hat = full * u_hat + dt / 6.0 * (full * k1 + 2.0 * half * (k2 + k3) + k4)
        return new_hat * self.keep

    def step(self, u: Field2D, t: float = 0.0) -> Field2D:
        """
        Advance a field by one step.

        Raises:
            BlowUpError: if the result contains NaN or Inf
        """
        check_admissible(u)
        bound = stability_bound(u)
        if self.dt > bound:
            logger.warning(f"dt={self.dt:.3e} exceeds the advertised stability bound {bound:.3e} at t={t:.6g}")
        new_hat = self.step_hat(fft2(u.values))
        values = ifft2(new_hat)
        if not np.all(np.isfinite(values)):
            raise BlowUpError(t + self.dt)
        return u.with_values(values)


def step(u: Field2D, dt: float, p: EvolutionParams, t: float = 0.0) -> Field2D:
    """One IF-RK4 step of the model p from time t."""
    return IntegratingFactorRK4(u.grid, p, dt).step(u, t)


def h1_seminorm(u_hat: np.ndarray, grid: Grid2D) -> float:
    xi, eta = grid.wavenumbers()
    return math.sqrt(l2_norm_hat(1j * xi * u_hat, grid) ** 2 + l2_norm_hat(1j * eta * u_hat, grid) ** 2)


class DiagnosticsTracker:
    """
    Accumulates diagnostics rows for a run.

    The displacement of the profile is accumulated from consecutive snapshot
    pairs so that transits longer than half a period stay unambiguous.
    """

    def __init__(self, initial: Snapshot, with_analysis: bool = True):
        self.initial = initial
        self.with_analysis = with_analysis
        self.previous = initial
        self.displacement = 0.0
        self.series = DiagnosticsSeries()

    def record(self, snapshot: Snapshot) -> DiagnosticsRow:
        from . import analysis

        u = snapshot.field
        u_hat = fft2(u.values)
        row = dict(
            t=snapshot.t,
            l2_norm=u.l2_norm(),
            h1_seminorm=h1_seminorm(u_hat, u.grid),
            max_abs=u.max_abs(),
            xmean_drift=float(np.max(np.abs(u.x_mean()))),
        )
        if self.with_analysis and u.max_abs() > 0:
            try:
                axis, score = analysis.find_axis(u)
                row.update(axis_lambda=axis, asymmetry_score=score)
                if snapshot.t > self.previous.t:
                    self.displacement += analysis.estimate_shift(self.previous.field, u)
                elapsed = snapshot.t - self.initial.t
                if elapsed > 0:
                    row["speed_estimate"] = self.displacement / elapsed
                reference = fft2(self.initial.field.values)
                shifted = shift_hat(reference, u.grid, self.displacement)
                norm0 = l2_norm_hat(reference, u.grid)
                if norm0 > 0:
                    row["shape_error"] = l2_norm_hat(u_hat - shifted, u.grid) / norm0
            except (ZeroFieldError, SpeedUndefinedError) as e:
                logger.debug(f"analysis columns skipped at t={snapshot.t}: {e}")
        self.previous = snapshot
        result = DiagnosticsRow(**row)
        self.series = self.series.appended(result)
        return result

    def record_blowup(self, t: float) -> None:
        nan = float("nan")
        self.series = self.series.appended(
            DiagnosticsRow(t=t, l2_norm=nan, h1_seminorm=nan, max_abs=nan, xmean_drift=nan, blowup=True)
        )


def step_count(t_end: float, dt: float) -> int:
    """Number of steps needed to reach t_end with steps no longer than dt."""
    if t_end == 0:
        return 0
    return max(1, math.ceil(t_end / dt - 1e-9))


def simulate(cfg: RunConfig, progress: Optional[ProgressCallback] = None,
             initial: Optional[Field2D] = None) -> Tuple[List[Snapshot], DiagnosticsSeries]:
    """
    Run a time evolution described by cfg.

    Args:
        cfg: Run configuration
        progress: Optional callback receiving (steps done, total steps)
        initial: Optional initial field overriding cfg.initial

    Returns:
        Snapshots at the requested cadence and their diagnostics

    Raises:
        BlowUpError: carrying the partial snapshots and diagnostics
    """
    _require_evolution_model(cfg.model)
    u = initial if initial is not None else build_initial(cfg.initial, cfg.grid, cfg.seed)
    check_admissible(u)
    n_steps = step_count(cfg.t_end, cfg.dt)
    dt = cfg.t_end / n_steps if n_steps else cfg.dt
    logger.info(f"Simulating {cfg.model.tag} on {cfg.grid.nx}x{cfg.grid.ny} for {n_steps} steps (dt={dt:.3e})")

    snapshots = [Snapshot(0.0, u)]
    tracker = DiagnosticsTracker(snapshots[0], with_analysis=cfg.analysis)
    tracker.record(snapshots[0])
    if n_steps == 0:
        return snapshots, tracker.series

    stepper = IntegratingFactorRK4(cfg.grid, cfg.model, dt)
    if dt > stability_bound(u):
        logger.warning(f"dt={dt:.3e} exceeds the advertised stability bound {stability_bound(u):.3e}")
    u_hat = fft2(u.values)
    for n in range(1, n_steps + 1):
        u_hat = stepper.step_hat(u_hat)
        t = n * dt
        if not np.all(np.isfinite(u_hat)):
            logger.error(f"Blow-up detected at t={t:.6g}")
            tracker.record_blowup(t)
            raise BlowUpError(t, snapshots, tracker.series)
        if n % cfg.snapshot_every == 0 or n == n_steps:
            snapshot = Snapshot(t, Field2D(cfg.grid, ifft2(u_hat)))
            snapshots.append(snapshot)
            row = tracker.record(snapshot)
            logger.debug(f"t={t:.6g} l2={row.l2_norm:.6e} max|u|={row.max_abs:.6e}")
        if progress is not None:
            progress(n, n_steps)
    logger.info(f"Run finished at t={n_steps * dt:.6g} with {len(snapshots)} snapshots")
    return snapshots, tracker.series
