"""Tests for the traveling-wave Newton-Krylov solver."""

import math

import numpy as np
import pytest

from symwave.core.equations import tw_residual
from symwave.core.spectral import fft2, ifft2, reflect, spectral_shift
from symwave.core.timestep import IntegratingFactorRK4
from symwave.core.twsolve import (
    DEFAULT_TOL,
    EvenCosineBasis,
    TravelingWaveSolver,
    continue_branch,
    linear_speed,
    seed_wave,
    solve_tw,
)
from symwave.errors import AdmissibilityError, ConvergenceError, DegenerateWaveError
from symwave.models import ChkpNormalized, Field2D, Grid2D, HcpParams

TW_GRID = Grid2D(nx=32, ny=8, lx=2 * np.pi, ly=2 * np.pi)


class TestLinearSpeed:
    """Tests for the bifurcation speed of linear waves."""

    def test_chkp_plane_wave(self):
        """Test c = kappa / (1 + xi^2) for y-independent CH-KP waves."""
        assert linear_speed(TW_GRID, ChkpNormalized(kappa=1.0)) == pytest.approx(0.5)
        assert linear_speed(TW_GRID, ChkpNormalized(kappa=1.0), (2, 0)) == pytest.approx(0.2)

    def test_hcp_oblique_wave(self):
        """Test c = -(alpha eta^2 + beta xi^2 eta^2) / (xi^2 (1 + xi^2))."""
        p = HcpParams(alpha=1.0, beta=0.1, gamma=1.0)

        assert linear_speed(TW_GRID, p, (1, 1)) == pytest.approx(-1.1 / 2.0)

    def test_hcp_plane_wave_is_degenerate(self):
        with pytest.raises(DegenerateWaveError):
            linear_speed(TW_GRID, HcpParams(alpha=1.0, gamma=1.0), (1, 0))

    def test_mode_outside_band(self):
        with pytest.raises(DegenerateWaveError):
            linear_speed(TW_GRID, ChkpNormalized(kappa=1.0), (0, 0))


class TestEvenCosineBasis:
    """Tests for the coordinates of even-even fields."""

    def test_project_inverts_synthesize(self, rng):
        basis = EvenCosineBasis(TW_GRID)
        b = rng.standard_normal(basis.size)

        assert np.allclose(basis.project(basis.synthesize(b)), b, atol=1e-13)

    def test_synthesized_field_is_even(self, rng):
        basis = EvenCosineBasis(TW_GRID)
        values = np.fft.ifft2(basis.synthesize(rng.standard_normal(basis.size)))

        assert np.max(np.abs(values.imag)) < 1e-13
        field = Field2D(TW_GRID, values.real)
        assert np.allclose(reflect(field, 0.0).values, field.values, atol=1e-12)
        assert field.is_admissible()

    def test_pin_is_value_at_center_line(self):
        basis = EvenCosineBasis(TW_GRID)
        seed = seed_wave(TW_GRID, 0.3, (2, 1))

        assert basis.pin(basis.project(fft2(seed.values))) == pytest.approx(0.3)


class TestSolveTw:
    """Tests for solve_tw and continue_branch."""

    def test_small_chkp_wave(self):
        p = ChkpNormalized(kappa=1.0)
        seed = seed_wave(TW_GRID, 0.05)

        wave = solve_tw(seed, linear_speed(TW_GRID, p), p)

        assert wave.residual_norm <= 1e-10
        assert tw_residual(wave.profile, wave.speed, p).max_abs() <= 1e-10
        assert wave.amplitude == pytest.approx(0.05)
        assert wave.speed == pytest.approx(0.5, abs=0.05)
        assert np.allclose(reflect(wave.profile, 0.0).values, wave.profile.values, atol=1e-12)

    def test_small_hcp_wave(self):
        p = HcpParams(alpha=1.0, beta=0.1, gamma=1.0)
        seed = seed_wave(TW_GRID, 0.02, (1, 1))

        wave = solve_tw(seed, linear_speed(TW_GRID, p, (1, 1)), p)

        assert wave.residual_norm <= 1e-10
        assert wave.model == p
        assert wave.speed == pytest.approx(-0.55, abs=0.05)

    def test_zero_amplitude_is_degenerate(self):
        with pytest.raises(DegenerateWaveError):
            solve_tw(seed_wave(TW_GRID, 0.0), 0.5, ChkpNormalized(kappa=1.0))

    def test_seed_must_be_even(self):
        x, _ = TW_GRID.mesh()

        with pytest.raises(AdmissibilityError):
            solve_tw(Field2D(TW_GRID, 0.05 * np.sin(x)), 0.5, ChkpNormalized(kappa=1.0))

    def test_seed_must_be_even_in_y(self):
        x, y = TW_GRID.mesh()
        seed = Field2D(TW_GRID, 0.05 * np.cos(x) + 0.04 * np.cos(x) * np.sin(y))

        with pytest.raises(AdmissibilityError, match="even in y"):
            solve_tw(seed, 0.5, ChkpNormalized(kappa=1.0))

    def test_even_seed_keeps_its_y_modes(self):
        x, y = TW_GRID.mesh()
        seed = Field2D(TW_GRID, 0.05 * np.cos(x) + 0.01 * np.cos(x) * np.cos(y))

        wave = solve_tw(seed, 0.5, ChkpNormalized(kappa=1.0))

        assert wave.residual_norm <= 1e-10
        assert wave.amplitude == pytest.approx(0.04)

    def test_iteration_limit(self):
        with pytest.raises(ConvergenceError) as excinfo:
            solve_tw(seed_wave(TW_GRID, 0.05), 0.5, ChkpNormalized(kappa=1.0), tol=1e-14, max_iter=0)

        assert excinfo.value.last_residual > 1e-14

    def test_continuation_follows_branch(self):
        p = ChkpNormalized(kappa=1.0)
        start = solve_tw(seed_wave(TW_GRID, 0.02), 0.5, p)

        branch = continue_branch(start, 0.01, 3)

        assert [w.amplitude for w in branch] == pytest.approx([0.02, 0.03, 0.04, 0.05])
        assert all(w.residual_norm <= 1e-10 for w in branch)
        speeds = [w.speed for w in branch]
        assert max(speeds) - min(speeds) < 0.05

    def test_zero_steps_returns_start(self):
        start = solve_tw(seed_wave(TW_GRID, 0.02), 0.5, ChkpNormalized(kappa=1.0))

        branch = continue_branch(start, 0.01, 0)

        assert len(branch) == 1
        assert branch[0] is start

    def test_reversed_step_retraces_branch(self):
        p = ChkpNormalized(kappa=1.0)
        forward = continue_branch(solve_tw(seed_wave(TW_GRID, 0.02), 0.5, p), 0.01, 3)

        backward = continue_branch(forward[-1], -0.01, 3)

        assert [w.amplitude for w in backward] == pytest.approx([0.05, 0.04, 0.03, 0.02])
        for there, back in zip(reversed(forward), backward):
            assert back.speed == pytest.approx(there.speed, abs=1e-8)
            assert np.max(np.abs(back.profile.values - there.profile.values)) < 1e-8

    def test_speed_is_monotone_along_branch(self):
        p = ChkpNormalized(kappa=1.0)
        branch = continue_branch(solve_tw(seed_wave(TW_GRID, 0.02), 0.5, p), 0.01, 4)

        assert len(branch) == 5
        steps = np.diff([w.speed for w in branch])
        assert np.all(steps > 0) or np.all(steps < 0)

    def test_profile_translates_under_evolution(self):
        """Test that one transit of the evolved profile matches its rigid translate."""
        p = ChkpNormalized(kappa=1.0)
        wave = solve_tw(seed_wave(TW_GRID, 0.05), 0.5, p)
        dt = 0.01
        steps = math.ceil(TW_GRID.lx / wave.speed / dt)
        stepper = IntegratingFactorRK4(TW_GRID, p, dt)

        u_hat = fft2(wave.profile.values)
        for _ in range(steps):
            u_hat = stepper.step_hat(u_hat)

        expected = spectral_shift(wave.profile, wave.speed * steps * dt)
        assert np.max(np.abs(ifft2(u_hat) - expected.values)) <= 100 * DEFAULT_TOL

    def test_solver_reuse(self):
        solver = TravelingWaveSolver(TW_GRID, ChkpNormalized(kappa=1.0))
        first = solver.solve(seed_wave(TW_GRID, 0.03), 0.5)
        second = solver.solve(seed_wave(TW_GRID, 0.03), 0.5)

        assert first.speed == second.speed
