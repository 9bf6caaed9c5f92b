"""
Periodic-grid Fourier machinery.

Forward transforms are unnormalized and inverse transforms carry the
1/(nx*ny) factor (the scipy.fft "backward" convention). Spectral arrays have
shape (ny, nx) in FFT order; the x wavenumber varies along axis 1.
"""

import logging
from typing import Optional

import numpy as np
import scipy.fft

from ..errors import AdmissibilityError, DerivativeOrderError
from ..models.grid import Field2D, Grid2D

logger = logging.getLogger(__name__)

MAX_DERIVATIVE_ORDER = 4

_workers: Optional[int] = None


def set_workers(workers: Optional[int]) -> None:
    """
    Set the number of threads used by scipy.fft.

    Args:
        workers: Thread count, or None for scipy's default (serial)
    """
    global _workers
    _workers = workers
    logger.debug(f"FFT workers set to {workers}")


def fft2(values: np.ndarray) -> np.ndarray:
    return scipy.fft.fft2(values, axes=(-2, -1), workers=_workers)


def ifft2(coeffs: np.ndarray) -> np.ndarray:
    """Inverse transform, keeping the real part."""
    return scipy.fft.ifft2(coeffs, axes=(-2, -1), workers=_workers).real


def nyquist_mask(grid: Grid2D, px: int = 1, py: int = 1) -> np.ndarray:
    """
    Mask that zeroes Nyquist rows/columns for odd derivative orders.

    Odd derivatives of the Nyquist mode are not representable as real fields.
    """
    mask = np.ones(grid.shape)
    if px % 2:
        mask[:, grid.nx // 2] = 0.0
    if py % 2:
        mask[grid.ny // 2, :] = 0.0
    return mask


def derivative_multiplier(grid: Grid2D, px: int, py: int) -> np.ndarray:
    """Spectral multiplier (i xi)^px (i eta)^py with Nyquist handling."""
    if px < 0 or py < 0:
        raise DerivativeOrderError("derivative orders must be nonnegative")
    if px + py > MAX_DERIVATIVE_ORDER:
        raise DerivativeOrderError(
            f"derivative order {px + py} exceeds the supported maximum {MAX_DERIVATIVE_ORDER}"
        )
    xi, eta = grid.wavenumbers()
    return (1j * xi) ** px * (1j * eta) ** py * nyquist_mask(grid, px, py)


def dealias_mask(grid: Grid2D) -> np.ndarray:
    """2/3-rule mask: keep modes with |j| < nx/3 and |k| < ny/3."""
    j = np.abs(np.fft.fftfreq(grid.nx, d=1.0 / grid.nx))
    k = np.abs(np.fft.fftfreq(grid.ny, d=1.0 / grid.ny))
    return np.outer(k < grid.ny / 3, j < grid.nx / 3).astype(np.float64)


def l_symbol(grid: Grid2D) -> np.ndarray:
    """Symbol i xi (1 + xi^2) of L = d/dx (1 - d^2/dx^2)."""
    xi, _ = grid.wavenumbers()
    return 1j * xi * (1 + xi**2) * nyquist_mask(grid, 1, 0)


def inverse_l_symbol(grid: Grid2D) -> np.ndarray:
    """Symbol of L^-1, zero on the xi = 0 column and the Nyquist column."""
    symbol = l_symbol(grid)
    inverse = np.zeros_like(symbol)
    nonzero = symbol != 0
    inverse[nonzero] = 1.0 / symbol[nonzero]
    return inverse


def deriv(f: Field2D, px: int, py: int) -> Field2D:
    """
    Spectral derivative d^px/dx^px d^py/dy^py.

    Exact on band-limited trigonometric data.

    Args:
        f: Field to differentiate
        px: Order in x
        py: Order in y

    Returns:
        Differentiated field
    """
    multiplier = derivative_multiplier(f.grid, px, py)
    return f.with_values(ifft2(multiplier * fft2(f.values)))


def apply_L(f: Field2D) -> Field2D:
    """Apply L f = d/dx (1 - d^2/dx^2) f."""
    return f.with_values(ifft2(l_symbol(f.grid) * fft2(f.values)))


def check_admissible(f: Field2D) -> None:
    """Raise AdmissibilityError unless every row of f has zero x-mean."""
    if not f.is_admissible():
        raise AdmissibilityError()


def invert_L(f: Field2D) -> Field2D:
    """
    Apply L^-1 on the zero x-mean subspace.

    Raises:
        AdmissibilityError: if some row of f has nonzero x-mean
    """
    check_admissible(f)
    return f.with_values(ifft2(inverse_l_symbol(f.grid) * fft2(f.values)))


def shift_hat(coeffs: np.ndarray, grid: Grid2D, delta_x: float) -> np.ndarray:
    """Phase factor exp(-i xi delta_x), translating a field by +delta_x."""
    return coeffs * np.exp(-1j * grid.xi() * delta_x)[None, :]


def spectral_shift(f: Field2D, delta_x: float) -> Field2D:
    """
    Translate f by delta_x in x: returns f(x - delta_x, y).

    Exact, including sub-grid shifts, for band-limited fields.
    """
    return f.with_values(ifft2(shift_hat(fft2(f.values), f.grid, delta_x)))


def reflect_hat(coeffs: np.ndarray, grid: Grid2D, lam: float) -> np.ndarray:
    """Coefficients of f(2*lam - x, y): conj-index in x, then a phase shift by 2*lam."""
    flipped = np.roll(np.flip(coeffs, axis=-1), 1, axis=-1)
    return flipped * np.exp(-2j * grid.xi() * lam)[None, :]


def reflect(f: Field2D, lam: float) -> Field2D:
    """Reflect f about the axis x = lam: returns f(2*lam - x, y)."""
    return f.with_values(ifft2(reflect_hat(fft2(f.values), f.grid, lam)))


def l2_norm_hat(coeffs: np.ndarray, grid: Grid2D) -> float:
    """Discrete L2 norm computed from coefficients (Parseval)."""
    return float(np.sqrt(grid.dx * grid.dy * np.sum(np.abs(coeffs) ** 2) / grid.size))


def evaluate(f: Field2D, x: np.ndarray, y: np.ndarray, px: int = 0, py: int = 0,
             chunk: int = 16384) -> np.ndarray:
    """
    Evaluate the trigonometric interpolant of f (or a derivative) off-grid.

    Args:
        f: Sampled field
        x: x-coordinates of any shape
        y: y-coordinates broadcastable against x
        px, py: Derivative orders
        chunk: Number of points evaluated per batch

    Returns:
        Array of interpolated values with the broadcast shape of x and y
    """
    grid = f.grid
    coeffs = fft2(f.values) * derivative_multiplier(grid, px, py) / grid.size
    xb, yb = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    flat_x, flat_y = xb.ravel(), yb.ravel()
    out = np.empty(flat_x.size)
    xi, eta = grid.xi(), grid.eta()
    for start in range(0, flat_x.size, chunk):
        sx = flat_x[start:start + chunk]
        sy = flat_y[start:start + chunk]
        partial = coeffs @ np.exp(1j * np.outer(xi, sx))
        out[start:start + chunk] = np.real(np.sum(np.exp(1j * np.outer(eta, sy)) * partial, axis=0))
    return out.reshape(xb.shape)
