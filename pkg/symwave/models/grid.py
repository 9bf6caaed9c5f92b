"""Grid and field models."""

from dataclasses import dataclass, field as dataclass_field

import numpy as np
from pydantic import Field, field_validator

from .base import BaseSymwaveModel

# Relative tolerance for the row-wise zero x-mean condition.
ADMISSIBILITY_RTOL = 1e-12


class Grid2D(BaseSymwaveModel):
    """
    Periodic rectangular grid [0, lx) x [0, ly).

    Arrays sampled on the grid have shape (ny, nx), so the x index runs
    fastest in memory.
    """

    nx: int = Field(..., description="Points in x")
    ny: int = Field(..., description="Points in y")
    lx: float = Field(..., gt=0, description="Period in x")
    ly: float = Field(..., gt=0, description="Period in y")

    @field_validator("nx", "ny")
    @classmethod
    def validate_resolution(cls, v: int) -> int:
        """Resolutions must be even and at least 8."""
        if v < 8 or v % 2:
            raise ValueError("resolution must be an even integer >= 8")
        return v

    @property
    def shape(self) -> tuple:
        return (self.ny, self.nx)

    @property
    def dx(self) -> float:
        return self.lx / self.nx

    @property
    def dy(self) -> float:
        return self.ly / self.ny

    @property
    def size(self) -> int:
        return self.nx * self.ny

    def x(self) -> np.ndarray:
        """Grid abscissae in x."""
        return np.arange(self.nx) * self.dx

    def y(self) -> np.ndarray:
        """Grid abscissae in y."""
        return np.arange(self.ny) * self.dy

    def mesh(self) -> tuple:
        """Return (X, Y) arrays of shape (ny, nx)."""
        return np.meshgrid(self.x(), self.y(), indexing="xy")

    def xi(self) -> np.ndarray:
        """Angular wavenumbers in x, FFT order."""
        return 2 * np.pi * np.fft.fftfreq(self.nx, d=self.dx)

    def eta(self) -> np.ndarray:
        """Angular wavenumbers in y, FFT order."""
        return 2 * np.pi * np.fft.fftfreq(self.ny, d=self.dy)

    def wavenumbers(self) -> tuple:
        """Return (XI, ETA) arrays of shape (ny, nx)."""
        return np.meshgrid(self.xi(), self.eta(), indexing="xy")


@dataclass(frozen=True, eq=False)
class Field2D:
    """A real scalar field sampled on a Grid2D."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"field shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("field contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: Grid2D) -> "Field2D":
        return cls(grid, np.zeros(grid.shape))

    def with_values(self, values: np.ndarray) -> "Field2D":
        """Return a new field on the same grid."""
        return Field2D(self.grid, values)

    def x_mean(self) -> np.ndarray:
        """Mean over x of every y row."""
        return self.values.mean(axis=1)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def l2_norm(self) -> float:
        """Discrete L2 norm sqrt(dx*dy*sum(u^2))."""
        return float(np.sqrt(self.grid.dx * self.grid.dy * np.sum(self.values**2)))

    def is_admissible(self) -> bool:
        """True when every y row has zero x-mean relative to max|u|."""
        return bool(np.all(np.abs(self.x_mean()) <= ADMISSIBILITY_RTOL * self.max_abs()))

    def project_admissible(self) -> "Field2D":
        """Remove the x-mean of every row."""
        return self.with_values(self.values - self.x_mean()[:, None])

    def __add__(self, other: "Field2D") -> "Field2D":
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "Field2D") -> "Field2D":
        return self.with_values(self.values - other.values)

    def __mul__(self, scalar: float) -> "Field2D":
        return self.with_values(self.values * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "Field2D":
        return self.with_values(-self.values)


@dataclass(frozen=True, eq=False)
class SpectralField2D:
    """
    Fourier coefficients of a real field.

    Coefficients follow the unnormalized forward FFT convention and are
    stored in FFT order with shape (ny, nx).
    """

    grid: Grid2D
    coeffs: np.ndarray

    def is_admissible(self) -> bool:
        scale = np.max(np.abs(self.coeffs)) if self.coeffs.size else 0.0
        return bool(np.all(np.abs(self.coeffs[:, 0]) <= ADMISSIBILITY_RTOL * scale * self.grid.nx))

    def is_hermitian(self, rtol: float = 1e-12) -> bool:
        """Check coeff(-j,-k) == conj(coeff(j,k))."""
        flipped = np.roll(np.flip(self.coeffs, axis=(0, 1)), shift=(1, 1), axis=(0, 1))
        scale = max(float(np.max(np.abs(self.coeffs))), 1e-300)
        return bool(np.max(np.abs(flipped - np.conj(self.coeffs))) <= rtol * scale)


@dataclass(frozen=True, eq=False)
class Snapshot:
    """One time slice u(t, ., .)."""

    t: float
    field: Field2D

    def __post_init__(self):
        if not np.isfinite(self.t):
            raise ValueError("snapshot time must be finite")


@dataclass(frozen=True, eq=False)
class SampledField:
    """A field sampled at several times on a common grid."""

    grid: Grid2D
    times: np.ndarray
    values: np.ndarray = dataclass_field(repr=False)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (times.size,) + self.grid.shape:
            raise ValueError("sampled values must have shape (nt, ny, nx)")
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise ValueError("sample times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_snapshots(cls, snapshots: list) -> "SampledField":
        grid = snapshots[0].field.grid
        return cls(
            grid,
            np.array([s.t for s in snapshots]),
            np.stack([s.field.values for s in snapshots]),
        )

    def snapshots(self) -> list:
        return [Snapshot(float(t), Field2D(self.grid, v)) for t, v in zip(self.times, self.values)]

    @property
    def t_range(self) -> tuple:
        return (float(self.times[0]), float(self.times[-1]))
