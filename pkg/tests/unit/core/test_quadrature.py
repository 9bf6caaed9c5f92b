"""Tests for composite Gauss-Legendre quadrature."""

import logging

import numpy as np
import pytest
from scipy.special import erf

from symwave.core.quadrature import Box, QuadratureResult, bisect, initial_cells, integrate, reference_rule
from symwave.errors import QuadratureError
from symwave.models.config import QuadratureConfig


class TestRules:
    def test_reference_rule_integrates_polynomials(self):
        x, w = reference_rule(4)

        assert w.sum() == pytest.approx(1.0)
        assert np.sum(w * x**7) == pytest.approx(1.0 / 8.0)

    def test_initial_cells_cover_unit_cube(self):
        cells = initial_cells(3, spatial=False, sides=2)

        assert cells.count == 54
        assert cells.volume.sum() == pytest.approx(2.0)

    def test_bisection_keeps_children_together(self):
        parent = initial_cells(1, spatial=True, sides=1)
        children = bisect(parent, spatial=True)

        assert children.count == 4
        assert children.volume.sum() == pytest.approx(1.0)
        # t is not split for spatial boxes
        assert np.all(children.lo[:, 0] == 0.0) and np.all(children.hi[:, 0] == 1.0)
        assert bisect(initial_cells(2, spatial=False, sides=1), spatial=False).count == 64


class TestIntegrate:
    """Tests for adaptive integration on boxes."""

    def test_spatial_gaussian(self):
        def integrand(t, x, y):
            return np.stack([np.exp(-(x**2) - y**2), x * np.exp(-(x**2) - y**2)])

        result = integrate(integrand, Box(x=(-8.0, 8.0), y=(-8.0, 8.0)))

        assert result.values[0] == pytest.approx(np.pi, abs=1e-10)
        assert abs(result.values[1]) < 1e-12
        assert result.value([2.0, 5.0]) == pytest.approx(2 * np.pi, abs=1e-9)

    def test_space_time_box(self):
        def integrand(t, x, y):
            return np.stack([np.broadcast_to(t * x * y, np.broadcast(x, y).shape)])

        result = integrate(integrand, Box(x=(0.0, 1.0), y=(0.0, 2.0), t=(0.0, 3.0)))

        assert result.value() == pytest.approx(4.5 * 0.5 * 2.0)

    def test_ridge_split_handles_kink(self):
        """Test that splitting at the kink of exp(-|x - y/2|) gives full accuracy."""

        def integrand(t, x, y):
            return np.stack([np.exp(-np.abs(x - 0.5 * y))])

        box = Box(x=(-1.0, 1.0), y=(0.0, 1.0))
        result = integrate(integrand, box, ridge=lambda t, y: 0.5 * y)

        assert result.value() == pytest.approx(self._kink_integral(), abs=1e-10)
        assert result.estimate() < 1e-9

    @staticmethod
    def _kink_integral() -> float:
        # int_0^1 int_-1^1 exp(-|x - y/2|) dx dy with a = y/2:
        # inner = 2 - exp(-(1 + a)) - exp(-(1 - a)), integrated over y.
        return 2.0 - 2 * (np.exp(-1.0) - np.exp(-1.5)) - 2 * (np.exp(-0.5) - np.exp(-1.0))

    def test_estimate_is_floored_at_roundoff(self):
        def integrand(t, x, y):
            return np.stack([np.ones(np.broadcast(x, y).shape)])

        result = integrate(integrand, Box(x=(0.0, 1.0), y=(0.0, 1.0)))

        assert result.estimate() > 0.0
        assert result.estimate() < 1e-12

    def test_diverging_refinement_raises(self):
        """Test that a non-integrable singularity raises QuadratureError."""

        def integrand(t, x, y):
            return np.stack([1.0 / x**2])

        with pytest.raises(QuadratureError):
            integrate(integrand, Box(x=(0.0, 1.0), y=(0.0, 1.0)))

    def test_max_levels_warns(self, caplog):
        def integrand(t, x, y):
            return np.stack([np.exp(x)])

        config = QuadratureConfig(nodes=2, initial_cells=1, max_levels=2, tol=1e-14)
        with caplog.at_level(logging.WARNING, logger="symwave.core.quadrature"):
            result = integrate(integrand, Box(x=(0.0, 1.0), y=(0.0, 1.0)), config=config)

        assert result.levels == 2
        assert result.estimate() > 0.0
        assert "refinement levels" in caplog.text

    def test_result_is_bit_stable(self):
        def integrand(t, x, y):
            return np.stack([np.cos(x * y + t)])

        box = Box(x=(0.0, 2.0), y=(0.0, 1.0), t=(0.0, 1.0))

        assert integrate(integrand, box).value() == integrate(integrand, box).value()


class TestRefinement:
    """Tests for the refinement rate and the adaptivity of bisection."""

    @staticmethod
    def _estimates(integrand, box, ridge=None, levels=(1, 2, 3)):
        # A tiny tol keeps every cell active, so each level halves all cells.
        estimates = []
        for max_levels in levels:
            config = QuadratureConfig(nodes=2, initial_cells=1, max_levels=max_levels, tol=1e-15)
            estimates.append(integrate(integrand, box, ridge, config).estimate())
        return estimates

    def test_smooth_integrand_converges_at_fourth_order(self):
        def integrand(t, x, y):
            return np.stack([np.exp(x + y) * np.cos(t)])

        estimates = self._estimates(integrand, Box(x=(0.0, 1.0), y=(0.0, 1.0), t=(0.0, 1.0)))

        assert estimates[0] / estimates[1] >= 4.0
        assert estimates[1] / estimates[2] >= 4.0

    def test_ridge_split_integrand_converges(self):
        def integrand(t, x, y):
            return np.stack([np.exp(-np.abs(x - 0.5 * y))])

        estimates = self._estimates(integrand, Box(x=(-1.0, 1.0), y=(0.0, 1.0)), ridge=lambda t, y: 0.5 * y)

        assert estimates[0] / estimates[1] >= 2.0
        assert estimates[1] / estimates[2] >= 2.0

    def test_only_unresolved_cells_are_bisected(self):
        """Test that a localized peak is resolved with fewer points than uniform refinement."""
        evaluated = []

        def integrand(t, x, y):
            evaluated.append(x.size)
            return np.stack([np.exp(-25.0 * (x - 0.3) ** 2)])

        config = QuadratureConfig(nodes=8, initial_cells=4, max_levels=6, tol=1e-10)
        result = integrate(integrand, Box(x=(0.0, 4.0), y=(0.0, 1.0)), config=config)

        exact = 0.5 * np.sqrt(np.pi) / 5.0 * (erf(18.5) + erf(1.5))
        assert result.value() == pytest.approx(exact, abs=1e-9)
        assert result.levels >= 2
        uniform = sum((4 * 2**level) ** 2 * 64 for level in range(result.levels + 1))
        assert sum(evaluated) < uniform


class TestQuadratureResult:
    def test_value_and_estimate_with_coefficients(self):
        result = QuadratureResult(
            values=np.array([1.0, 2.0]),
            previous=np.array([1.0 + 1e-6, 2.0]),
            magnitudes=np.array([1.0, 2.0]),
            levels=3,
        )

        assert result.value([1.0, -0.5]) == pytest.approx(0.0)
        assert result.estimate([1.0, -0.5]) == pytest.approx(1e-6)
        assert result.estimate([0.0, 1.0]) == pytest.approx(2e-13)
