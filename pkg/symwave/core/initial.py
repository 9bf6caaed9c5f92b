"""Initial-data generators for time-evolution runs."""

import logging

import numpy as np

from ..models.config import (
    GaussianInitial,
    InitialSpec,
    ModeInitial,
    RandomInitial,
    SnapshotInitial,
)
from ..errors import ConfigError
from ..models.grid import Field2D, Grid2D

logger = logging.getLogger(__name__)


def periodic_offset(x: np.ndarray, center: float, period: float) -> np.ndarray:
    """Signed distance from center on a circle of the given period."""
    return np.mod(x - center + period / 2, period) - period / 2


def gaussian_bump(grid: Grid2D, spec: GaussianInitial) -> Field2D:
    x, y = grid.mesh()
    dx = periodic_offset(x, spec.center[0], grid.lx) / spec.width[0]
    dy = periodic_offset(y, spec.center[1], grid.ly) / spec.width[1]
    field = Field2D(grid, spec.amplitude * np.exp(-(dx**2) - dy**2))
    return field.project_admissible()


def single_mode(grid: Grid2D, spec: ModeInitial) -> Field2D:
    x, y = grid.mesh()
    xi = 2 * np.pi * spec.jx / grid.lx
    eta = 2 * np.pi * spec.ky / grid.ly
    return Field2D(grid, spec.amplitude * np.cos(xi * x + eta * y + spec.phase))


def random_bandlimited(grid: Grid2D, amplitude: float, max_mode: int,
                       rng: np.random.Generator) -> Field2D:
    """
    Random admissible field with modes 1 <= |j| <= max_mode, |k| <= max_mode.

    The result is scaled so that max|u| equals amplitude.
    """
    limit = min(grid.nx, grid.ny) // 3 - 1
    if max_mode > limit:
        logger.warning(f"max_mode {max_mode} reduced to {limit} to stay inside the dealiased band")
        max_mode = limit
    x, y = grid.mesh()
    values = np.zeros(grid.shape)
    for j in range(1, max_mode + 1):
        for k in range(-max_mode, max_mode + 1):
            amp, phase = rng.standard_normal(), rng.uniform(0, 2 * np.pi)
            values += amp * np.cos(2 * np.pi * (j * x / grid.lx + k * y / grid.ly) + phase)
    values *= amplitude / np.max(np.abs(values))
    return Field2D(grid, values)


def build_initial(spec: InitialSpec, grid: Grid2D, seed: int = 0) -> Field2D:
    """
    Generate the initial field described by spec.

    Args:
        spec: Initial-data specification
        grid: Target grid
        seed: Seed for randomized generators

    Returns:
        Admissible initial field
    """
    if isinstance(spec, GaussianInitial):
        return gaussian_bump(grid, spec)
    if isinstance(spec, ModeInitial):
        return single_mode(grid, spec)
    if isinstance(spec, RandomInitial):
        return random_bandlimited(grid, spec.amplitude, spec.max_mode, np.random.default_rng(seed))
    if isinstance(spec, SnapshotInitial):
        from ..utils.snapshots import read_snapshot

        snapshot, _ = read_snapshot(spec.path)
        if snapshot.field.grid != grid:
            raise ConfigError("snapshot grid does not match the run grid", key_path="initial.path")
        return snapshot.field
    raise ValueError(f"unknown initial generator {spec!r}")
