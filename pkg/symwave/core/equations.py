"""
Right-hand sides, residuals and dispersion symbols of the two models.

Normalized CH-KP:
    L u_t + kappa u_xx + (3 u u_x - 2 u_x u_xx - u u_xxx)_x + u_yy = 0
Hyperelastic compressible plate (HCP):
    L u_t + (3 u u_x - gamma (2 u_x u_xx + u u_xxx))_x - alpha u_yy + beta u_xxyy = 0

Both share the flux Q = 3 u u_x - g (2 u_x u_xx + u u_xxx) with g = 1 for
CH-KP and g = gamma for HCP. The outer d/dx is applied spectrally to the
flux as written, so every nonlinear contribution has zero x-mean.

Frequencies use the convention u ~ exp(i (xi x + eta y - omega t)).
"""

import logging
from typing import Union

import numpy as np

from ..errors import AdmissibilityError, ModelError
from ..models.grid import Field2D, Grid2D
from ..models.params import ChkpNormalized, ChkpPhysical, HcpParams
from .spectral import (
    check_admissible,
    dealias_mask,
    fft2,
    ifft2,
    inverse_l_symbol,
    l_symbol,
    nyquist_mask,
)

logger = logging.getLogger(__name__)

EvolutionParams = Union[ChkpNormalized, HcpParams]


def _require_evolution_model(p) -> None:
    if isinstance(p, ChkpPhysical):
        raise ModelError(
            "the physical CH-KP form is not evolved directly; map it with the transform module"
        )
    if not isinstance(p, (ChkpNormalized, HcpParams)):
        raise ModelError(f"unsupported model {type(p).__name__}")


def flux_gamma(p: EvolutionParams) -> float:
    """Coefficient of the cubic-derivative part of the flux."""
    return 1.0 if isinstance(p, ChkpNormalized) else p.gamma


def flux_hat(u_hat: np.ndarray, grid: Grid2D, gamma: float) -> np.ndarray:
    """
    Dealiased spectrum of Q = 3 u u_x - gamma (2 u_x u_xx + u u_xxx).

    Products are formed from 2/3-truncated fields and truncated again.
    """
    mask = dealias_mask(grid)
    xi, _ = grid.wavenumbers()
    truncated = u_hat * mask
    u = ifft2(truncated)
    u_x = ifft2(1j * xi * truncated)
    u_xx = ifft2(-(xi**2) * truncated)
    u_xxx = ifft2(-1j * xi**3 * truncated)
    q = 3 * u * u_x - gamma * (2 * u_x * u_xx + u * u_xxx)
    return fft2(q) * mask


def linear_bracket_symbol(grid: Grid2D, p: EvolutionParams) -> np.ndarray:
    """Symbol of the linear, non-time-derivative terms."""
    xi, eta = grid.wavenumbers()
    if isinstance(p, ChkpNormalized):
        return -p.kappa * xi**2 - eta**2
    return p.alpha * eta**2 + p.beta * xi**2 * eta**2


def bracket_hat(u_hat: np.ndarray, grid: Grid2D, p: EvolutionParams) -> np.ndarray:
    """Spectrum of every term except L u_t."""
    xi, _ = grid.wavenumbers()
    nonlinear = 1j * xi * nyquist_mask(grid, 1, 0) * flux_hat(u_hat, grid, flux_gamma(p))
    return linear_bracket_symbol(grid, p) * u_hat + nonlinear


def _rhs(u: Field2D, p: EvolutionParams) -> Field2D:
    _require_evolution_model(p)
    check_admissible(u)
    ut_hat = -inverse_l_symbol(u.grid) * bracket_hat(fft2(u.values), u.grid, p)
    return u.with_values(ifft2(ut_hat))


def chkp_rhs(u: Field2D, p: ChkpNormalized) -> Field2D:
    """
    Time derivative u_t = -L^-1[kappa u_xx + (3uu_x - 2u_xu_xx - uu_xxx)_x + u_yy].

    Raises:
        AdmissibilityError: if u has nonzero x-mean on some row
    """
    if not isinstance(p, ChkpNormalized):
        raise ModelError("chkp_rhs needs CH-KP normalized parameters")
    return _rhs(u, p)


def hcp_rhs(u: Field2D, p: HcpParams) -> Field2D:
    """
    Time derivative u_t = -L^-1[(3uu_x - gamma(2u_xu_xx + uu_xxx))_x - alpha u_yy + beta u_xxyy].

    Raises:
        AdmissibilityError: if u has nonzero x-mean on some row
    """
    if not isinstance(p, HcpParams):
        raise ModelError("hcp_rhs needs HCP parameters")
    return _rhs(u, p)


def rhs(u: Field2D, p: EvolutionParams) -> Field2D:
    """Dispatch to the right-hand side of the given model."""
    return _rhs(u, p)


def linear_symbol(p: EvolutionParams, xi: float, eta: float) -> float:
    """
    Dispersion frequency omega(xi, eta) for u ~ exp(i(xi x + eta y - omega t)).

    CH-KP: omega = (kappa xi^2 + eta^2) / (xi (1 + xi^2)).
    HCP:   omega = -p(xi, eta) = -(alpha eta^2 / xi + beta xi eta^2) / (1 + xi^2).

    Raises:
        AdmissibilityError: for xi == 0
    """
    _require_evolution_model(p)
    if xi == 0:
        raise AdmissibilityError("zero x-mode excluded from the dispersion relation")
    if isinstance(p, ChkpNormalized):
        return (p.kappa * xi**2 + eta**2) / (xi * (1 + xi**2))
    return -(p.alpha * eta**2 / xi + p.beta * xi * eta**2) / (1 + xi**2)


def omega_grid(grid: Grid2D, p: EvolutionParams) -> np.ndarray:
    """omega on every resolved mode; zero on the xi = 0 and Nyquist columns."""
    _require_evolution_model(p)
    # L^-1 times the linear bracket, written as -i omega
    return -(1j * inverse_l_symbol(grid) * linear_bracket_symbol(grid, p)).real


def nonlinear_hat(u_hat: np.ndarray, grid: Grid2D, p: EvolutionParams) -> np.ndarray:
    """
    Nonlinear part of u_t in spectral space: -L^-1 d/dx Q = -Q_hat / (1 + xi^2).

    The xi = 0 and Nyquist columns are zeroed.
    """
    xi, _ = grid.wavenumbers()
    keep = nyquist_mask(grid, 1, 0)
    keep[:, 0] = 0.0
    return -flux_hat(u_hat, grid, flux_gamma(p)) / (1 + xi**2) * keep


def strong_residual(u: Field2D, ut: Field2D, p: EvolutionParams) -> Field2D:
    """Left-hand side L u_t + [...] of the strong equation at one instant."""
    _require_evolution_model(p)
    residual = l_symbol(u.grid) * fft2(ut.values) + bracket_hat(fft2(u.values), u.grid, p)
    return u.with_values(ifft2(residual))


def tw_residual_hat(g_hat: np.ndarray, c: float, grid: Grid2D, p: EvolutionParams) -> np.ndarray:
    xi, _ = grid.wavenumbers()
    return -c * l_symbol(grid) * 1j * xi * g_hat + bracket_hat(g_hat, grid, p)


def tw_residual(g: Field2D, c: float, p: EvolutionParams) -> Field2D:
    """
    Traveling-wave residual -c L(g_x) + [...](g).

    Zero iff g(x - c t, y) is a classical traveling wave.
    """
    _require_evolution_model(p)
    return g.with_values(ifft2(tw_residual_hat(fft2(g.values), c, g.grid, p)))


def tw_linear_symbol(grid: Grid2D, c: float, p: EvolutionParams) -> np.ndarray:
    """Real symbol of the linear part of tw_residual: c xi^2 (1 + xi^2) + bracket symbol."""
    xi, _ = grid.wavenumbers()
    return c * xi**2 * (1 + xi**2) + linear_bracket_symbol(grid, p)
