"""Tests for the integrating-factor time stepper and run driver."""

import math

import numpy as np
import pytest

from symwave.core.spectral import fft2
from symwave.core.timestep import IntegratingFactorRK4, simulate, stability_bound, step, step_count
from symwave.errors import AdmissibilityError, BlowUpError, ModelError
from symwave.models import ChkpNormalized, ChkpPhysical, Field2D, HcpParams
from symwave.models.config import GaussianInitial, ModeInitial, RunConfig


def _run_config(grid, model, **overrides) -> RunConfig:
    values = dict(model=model, grid=grid, t_end=0.2, dt=0.05, initial=GaussianInitial(width=(0.8, 1.0)))
    values.update(overrides)
    return RunConfig(**values)


def _evolve(u: Field2D, p, dt: float, steps: int) -> np.ndarray:
    stepper = IntegratingFactorRK4(u.grid, p, dt)
    u_hat = fft2(u.values)
    for _ in range(steps):
        u_hat = stepper.step_hat(u_hat)
    return u_hat


class TestStep:
    """Tests for single steps."""

    def test_zero_field_stays_zero(self, grid, hcp):
        assert np.all(step(Field2D.zeros(grid), 0.1, hcp).values == 0.0)

    def test_step_rejects_inadmissible_field(self, grid, chkp):
        _, y = grid.mesh()

        with pytest.raises(AdmissibilityError):
            step(Field2D(grid, np.cos(y)), 0.1, chkp)

    def test_stability_bound(self, grid):
        x, _ = grid.mesh()

        assert stability_bound(Field2D.zeros(grid)) == math.inf
        assert stability_bound(Field2D(grid, 2.0 * np.sin(x))) == pytest.approx(0.25 * grid.dx)

    @pytest.mark.parametrize("model,omega", [
        (HcpParams(alpha=1.0, beta=0.0, gamma=1.0), -0.5),
        (ChkpNormalized(kappa=1.0), 1.0),
    ])
    def test_single_mode_dispersion(self, grid, model, omega):
        """Test that the (1, 1) coefficient rotates as exp(-i omega t)."""
        x, y = grid.mesh()
        u = Field2D(grid, 1e-8 * np.cos(x + y))
        dt, steps = 0.1, 20
        start = fft2(u.values)[1, 1]

        end = _evolve(u, model, dt, steps)[1, 1]
        t = dt * steps
        assert abs(end / start - np.exp(-1j * omega * t)) < 1e-10 * t

    def test_self_convergence_order(self, bandlimited, chkp):
        """Test that halving dt reduces the self-convergence error by about 16."""
        u = bandlimited(max_mode=2, amplitude=0.1)
        t_end, dt0 = 0.5, 0.05
        solutions = [_evolve(u, chkp, dt0 / 2**k, round(t_end / (dt0 / 2**k))) for k in range(3)]

        e1 = np.max(np.abs(solutions[0] - solutions[1]))
        e2 = np.max(np.abs(solutions[1] - solutions[2]))
        assert 3.5 <= math.log2(e1 / e2) <= 4.5


class TestStepCount:
    @pytest.mark.parametrize("t_end,dt,expected", [(0.0, 0.1, 0), (1.0, 0.1, 10), (1.0, 0.3, 4), (0.05, 0.05, 1)])
    def test_step_count(self, t_end, dt, expected):
        assert step_count(t_end, dt) == expected


class TestSimulate:
    """Tests for the run driver."""

    def test_zero_duration_returns_initial_snapshot(self, grid, chkp):
        snapshots, diagnostics = simulate(_run_config(grid, chkp, t_end=0.0))

        assert len(snapshots) == 1
        assert snapshots[0].t == 0.0
        assert len(diagnostics.rows) == 1

    def test_snapshot_cadence(self, grid, hcp):
        snapshots, diagnostics = simulate(_run_config(grid, hcp, t_end=0.2, dt=0.05, snapshot_every=2))

        assert [s.t for s in snapshots] == pytest.approx([0.0, 0.1, 0.2])
        assert [r.t for r in diagnostics.rows] == pytest.approx([0.0, 0.1, 0.2])
        assert all(r.finite for r in diagnostics.rows)
        assert all(s.field.is_admissible() for s in snapshots)

    def test_progress_callback(self, grid, chkp):
        calls = []
        simulate(_run_config(grid, chkp), progress=lambda done, total: calls.append((done, total)))

        assert calls == [(1, 4), (2, 4), (3, 4), (4, 4)]

    def test_identical_configs_are_bit_identical(self, grid, chkp):
        cfg = _run_config(grid, chkp, initial=ModeInitial(amplitude=0.1, jx=1, ky=1))
        first, _ = simulate(cfg)
        second, _ = simulate(cfg)

        assert first[-1].field.values.tobytes() == second[-1].field.values.tobytes()

    def test_physical_model_rejected(self, grid):
        cfg = _run_config(grid, ChkpPhysical(epsilon=0.1, gamma_phys=0.1))

        with pytest.raises(ModelError):
            simulate(cfg)

    def test_blowup_carries_partial_run(self, grid, chkp, mocker):
        """Test that a non-finite step raises BlowUpError with the partial run attached."""
        mocker.patch.object(IntegratingFactorRK4, "step_hat", return_value=np.full(grid.shape, np.nan + 0j))

        with pytest.raises(BlowUpError) as excinfo:
            simulate(_run_config(grid, chkp))

        error = excinfo.value
        assert error.t == pytest.approx(0.05)
        assert len(error.snapshots) == 1
        assert error.diagnostics.rows[-1].blowup
        assert "blow-up detected" in str(error)
