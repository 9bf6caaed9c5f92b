"""
Scale map between the physical CH-KP equation and its normalized form.

Physical form (small parameters epsilon, gamma):

    w_xt - 5/12 gamma w_xxxt + w_xx + 3/2 epsilon (w w_x)_x - 1/4 gamma w_xxxx
        - 5/24 gamma epsilon (2 w_x w_xx + w w_xxx)_x + 1/2 epsilon^3 w_yy = 0

With l = sqrt(5 gamma / 12), s = 2/5 + kappa/2 and m = l sqrt(epsilon^3 / 2),

    w(t, x, y) = (2 / epsilon) v(t / l, (x - s t) / l, y / m) + (kappa - 2/5) / epsilon

turns every solution v of the normalized equation into a solution w of the
physical one. The time and x scales and the amplitude 2/epsilon match the
usual statement of this reduction; the Galilean speed, the offset and the y
scale are the values for which the physical residual vanishes identically.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from pydantic import Field
from scipy.interpolate import CubicSpline

from ..errors import DomainError, InsufficientDataError
from ..models.base import BaseSymwaveModel
from ..models.config import TransformConfig
from ..models.grid import Field2D, Grid2D, SampledField
from .spectral import deriv, spectral_shift

logger = logging.getLogger(__name__)


class ScaleMap(BaseSymwaveModel):
    """Parameters of the physical-to-normalized change of variables."""

    epsilon: float = Field(..., gt=0)
    gamma_phys: float = Field(..., gt=0)
    kappa: float = 0.0

    @classmethod
    def from_config(cls, cfg: TransformConfig) -> "ScaleMap":
        return cls(epsilon=cfg.epsilon, gamma_phys=cfg.gamma_phys, kappa=cfg.kappa)

    @property
    def length(self) -> float:
        """Scale l of t and x."""
        return math.sqrt(5 * self.gamma_phys / 12)

    @property
    def y_scale(self) -> float:
        return self.length * math.sqrt(self.epsilon**3 / 2)

    @property
    def galilean_speed(self) -> float:
        return 0.4 + self.kappa / 2

    @property
    def amplitude(self) -> float:
        return 2 / self.epsilon

    @property
    def offset(self) -> float:
        return (self.kappa - 0.4) / self.epsilon

    def physical_grid(self, grid: Grid2D) -> Grid2D:
        return Grid2D(nx=grid.nx, ny=grid.ny, lx=grid.lx * self.length, ly=grid.ly * self.y_scale)

    def normalized_grid(self, grid: Grid2D) -> Grid2D:
        return Grid2D(nx=grid.nx, ny=grid.ny, lx=grid.lx / self.length, ly=grid.ly / self.y_scale)


def physical_speed(c: float, m: ScaleMap) -> float:
    """Physical speed of a wave moving with speed c in normalized variables."""
    return c + m.galilean_speed


def interpolate_in_time(u: SampledField, times: Sequence[float]) -> np.ndarray:
    """
    Values of u at the requested times, cubic in t between samples.

    Raises:
        DomainError: if a time falls outside the sampled range
    """
    times = np.asarray(times, dtype=float)
    t_lo, t_hi = u.t_range
    if times.size and (times.min() < t_lo or times.max() > t_hi):
        raise DomainError(
            f"requested times [{times.min():.6g}, {times.max():.6g}] are not sampled",
            required=(float(times.min()), float(times.max())),
        )
    if u.times.size == 1:
        return np.repeat(u.values, times.size, axis=0)
    return CubicSpline(u.times, u.values, axis=0)(times)


def to_normalized(u_phys: SampledField, m: ScaleMap,
                  times: Optional[Sequence[float]] = None) -> SampledField:
    """
    Map a physical sampled field to normalized variables.

    Args:
        u_phys: Samples of w on the physical grid
        m: Scale map
        times: Normalized sample times; defaults to the images of the
            physical sample times

    Raises:
        DomainError: if a requested time maps outside the sampled range
    """
    l, s = m.length, m.galilean_speed
    if times is None:
        physical_times = u_phys.times
        values = u_phys.values
    else:
        physical_times = l * np.asarray(times, dtype=float)
        values = interpolate_in_time(u_phys, physical_times)
    grid = m.normalized_grid(u_phys.grid)
    out = np.empty_like(values)
    for i, (t, w) in enumerate(zip(physical_times, values)):
        shifted = spectral_shift(Field2D(u_phys.grid, w), -s * t).values
        out[i] = (shifted - m.offset) / m.amplitude
    return SampledField(grid, physical_times / l, out)


def from_normalized(u_norm: SampledField, m: ScaleMap,
                    times: Optional[Sequence[float]] = None) -> SampledField:
    """
    Map a normalized sampled field to physical variables.

    Inverse of to_normalized on the sampled times.
    """
    l, s = m.length, m.galilean_speed
    if times is None:
        normalized_times = u_norm.times
        values = u_norm.values
    else:
        normalized_times = np.asarray(times, dtype=float) / l
        values = interpolate_in_time(u_norm, normalized_times)
    grid = m.physical_grid(u_norm.grid)
    out = np.empty_like(values)
    for i, (t_norm, v) in enumerate(zip(normalized_times, values)):
        shifted = spectral_shift(Field2D(u_norm.grid, v), s * t_norm).values
        out[i] = m.amplitude * shifted + m.offset
    return SampledField(grid, normalized_times * l, out)


def _time_derivative(values: np.ndarray, dt: float) -> np.ndarray:
    # Five-point central stencil, fourth order in dt, for interior samples.
    return (values[:-4] - 8 * values[1:-3] + 8 * values[3:-1] - values[4:]) / (12 * dt)


def physical_residual(w: SampledField, m: ScaleMap) -> SampledField:
    """
    Residual of the physical CH-KP equation at interior sample times.

    Space derivatives are spectral; the time derivative uses a five-point
    central difference, so samples must be uniformly spaced in time. The
    first and last two samples are dropped.

    Raises:
        InsufficientDataError: for fewer than 5 or non-uniform samples
    """
    if w.times.size < 5:
        raise InsufficientDataError("the physical residual needs at least 5 time samples")
    steps = np.diff(w.times)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise InsufficientDataError("the physical residual needs uniformly spaced time samples")
    eps, gamma = m.epsilon, m.gamma_phys
    grid = w.grid

    def spatial(values: np.ndarray, px: int, py: int = 0) -> np.ndarray:
        return deriv(Field2D(grid, values), px, py).values

    w_t = _time_derivative(w.values, float(steps[0]))
    out = np.empty_like(w_t)
    for i, (u, ut) in enumerate(zip(w.values[2:-2], w_t)):
        u_x, u_xx, u_xxx, u_xxxx = (spatial(u, k) for k in range(1, 5))
        out[i] = (
            spatial(ut, 1)
            - 5 / 12 * gamma * spatial(ut, 3)
            + u_xx
            + 1.5 * eps * (u_x**2 + u * u_xx)
            - 0.25 * gamma * u_xxxx
            - 5 / 24 * gamma * eps * (2 * u_xx**2 + 3 * u_x * u_xxx + u * u_xxxx)
            + 0.5 * eps**3 * spatial(u, 0, 2)
        )
    logger.debug(f"physical residual sup-norm {np.max(np.abs(out)):.3e}")
    return SampledField(grid, w.times[2:-2], out)
