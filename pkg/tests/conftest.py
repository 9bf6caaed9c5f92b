"""Shared test configuration and fixtures."""

import json

import numpy as np
import pytest

from symwave.core.spectral import set_workers
from symwave.models import ChkpNormalized, Field2D, Grid2D, HcpParams


@pytest.fixture(autouse=True)
def serial_fft():
    """Run every test with one FFT worker so results are reproducible."""
    set_workers(1)
    yield
    set_workers(None)


@pytest.fixture
def grid():
    """Small periodic grid with unit wavenumbers in both directions."""
    return Grid2D(nx=32, ny=16, lx=2 * np.pi, ly=2 * np.pi)


@pytest.fixture
def wide_grid():
    """Longer box used by symmetry and steadiness tests."""
    return Grid2D(nx=64, ny=16, lx=20.0, ly=10.0)


@pytest.fixture
def chkp():
    return ChkpNormalized(kappa=1.0)


@pytest.fixture
def hcp():
    return HcpParams(alpha=1.0, beta=0.1, gamma=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bandlimited(grid, rng):
    """Random admissible field whose modes sit well inside the dealiased band."""

    def make(max_mode: int = 4, amplitude: float = 0.1, target_grid=None) -> Field2D:
        g = target_grid or grid
        x, y = g.mesh()
        values = np.zeros(g.shape)
        for j in range(1, max_mode + 1):
            for k in range(-max_mode, max_mode + 1):
                phase = rng.uniform(0, 2 * np.pi)
                values += rng.standard_normal() * np.cos(2 * np.pi * (j * x / g.lx + k * y / g.ly) + phase)
        return Field2D(g, amplitude * values / np.max(np.abs(values)))

    return make


@pytest.fixture
def write_json(tmp_path):
    """Write a dictionary to a JSON file under tmp_path and return its path."""

    def write(name: str, data: dict):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return write
