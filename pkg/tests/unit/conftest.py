"""Fixtures for unit tests."""

import numpy as np
import pytest

from symwave.config.manager import ConfigManager
from symwave.models import Field2D, Snapshot


@pytest.fixture
def test_config_manager(tmp_path):
    """ConfigManager rooted in a temporary directory."""
    return ConfigManager(config_dir=tmp_path)


@pytest.fixture
def symmetric_bump(wide_grid):
    """Smooth periodic ridge symmetric about x = 7, projected to zero x-mean."""
    x, y = wide_grid.mesh()
    ridge = np.exp(4.0 * (np.cos(2 * np.pi * (x - 7.0) / wide_grid.lx) - 1.0))
    values = ridge * (1 + 0.3 * np.cos(2 * np.pi * y / wide_grid.ly))
    return Field2D(wide_grid, values).project_admissible()


@pytest.fixture
def shifted_series(symmetric_bump):
    """Exact translates of a profile moving with speed 0.75."""
    from symwave.core.spectral import spectral_shift

    return [Snapshot(t, spectral_shift(symmetric_bump, 0.75 * t)) for t in np.linspace(0.0, 4.0, 9)]
