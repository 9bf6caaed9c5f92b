"""
Newton-Krylov solver for smooth traveling-wave profiles.

A traveling wave u = g(x - c t, y) solves tw_residual(g, c) = 0. Profiles are
sought in the class of fields even in x about x = 0 and even in y about
y = ly/2, spanned by cos(xi_j x) cos(eta_k y) with 1 <= j < nx/2 and
0 <= k < ny/2. Evenness removes the translation degeneracy; the amplitude
pin g(0, ly/2) = A closes the system for the unknown speed c.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from ..errors import (
    AdmissibilityError,
    ConvergenceError,
    DegenerateWaveError,
    SingularJacobianError,
)
from ..models.grid import Field2D, Grid2D
from ..models.params import HcpParams
from ..models.reports import TravelingWave
from .equations import (
    EvolutionParams,
    _require_evolution_model,
    linear_bracket_symbol,
    tw_linear_symbol,
    tw_residual,
    tw_residual_hat,
)
from .spectral import check_admissible, fft2, ifft2, reflect

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 30
EVENNESS_TOL = 1e-8


def linear_speed(grid: Grid2D, p: EvolutionParams, mode: Tuple[int, int] = (1, 0)) -> float:
    """
    Bifurcation speed of the linear wave cos(xi_j x) cos(eta_k y).

    Raises:
        DegenerateWaveError: when no linear dispersion selects a speed
            (for example y-independent HCP waves)
    """
    _require_evolution_model(p)
    j, k = mode
    if not 1 <= j < grid.nx // 2 or not 0 <= k < grid.ny // 2:
        raise DegenerateWaveError(f"mode {mode} is outside the resolved band")
    bracket = linear_bracket_symbol(grid, p)[k, j]
    if bracket == 0 and k == 0 and isinstance(p, HcpParams):
        raise DegenerateWaveError("y-independent waves have no dispersion to select a speed; use a mode with k >= 1")
    xi = grid.xi()[j]
    return float(-bracket / (xi**2 * (1 + xi**2)))


def seed_wave(grid: Grid2D, amplitude: float, mode: Tuple[int, int] = (1, 0)) -> Field2D:
    """Linear profile A (-1)^k cos(xi_j x) cos(eta_k y), equal to A at (0, ly/2)."""
    j, k = mode
    x, y = grid.mesh()
    xi = 2 * np.pi * j / grid.lx
    eta = 2 * np.pi * k / grid.ly
    return Field2D(grid, amplitude * (-1) ** k * np.cos(xi * x) * np.cos(eta * y))


class EvenCosineBasis:
    """Coordinates of even-even fields in spectral space."""

    def __init__(self, grid: Grid2D):
        self.grid = grid
        self.cols = np.arange(1, grid.nx // 2)
        self.rows = np.arange(grid.ny // 2)
        self.shape = (self.rows.size, self.cols.size)
        self.size = self.rows.size * self.cols.size
        weight = np.where(self.rows == 0, 2.0, 4.0)[:, None]
        self.weight = np.broadcast_to(weight, self.shape) / grid.size
        self.pin_signs = np.broadcast_to(((-1.0) ** self.rows)[:, None], self.shape)

    def synthesize(self, b: np.ndarray) -> np.ndarray:
        """Spectral coefficients of sum b_kj cos(xi_j x) cos(eta_k y)."""
        grid = self.grid
        values = b.reshape(self.shape) / self.weight
        coeffs = np.zeros(grid.shape, dtype=complex)
        for rows in (self.rows, (-self.rows) % grid.ny):
            for cols in (self.cols, (-self.cols) % grid.nx):
                coeffs[np.ix_(rows, cols)] = values
        return coeffs

    def project(self, coeffs: np.ndarray) -> np.ndarray:
        """Cosine coordinates of the even-even part of a field."""
        grid = self.grid
        total = np.zeros(self.shape)
        for rows in (self.rows, (-self.rows) % grid.ny):
            for cols in (self.cols, (-self.cols) % grid.nx):
                total += coeffs[np.ix_(rows, cols)].real
        return (total / 4 * self.weight).ravel()

    def pin(self, b: np.ndarray) -> float:
        """Value of the field at (0, ly/2)."""
        return float(np.sum(b.reshape(self.shape) * self.pin_signs))


class TravelingWaveSolver:
    """
    Newton iteration on (g, c) for one model on one grid.

    The residual is a quadratic map of the unknowns, so the Jacobian action
    is evaluated exactly by polarization, J v = (F(z + v) - F(z - v)) / 2.
    Inner solves use GMRES preconditioned by the inverse of the
    constant-coefficient linearization, which is diagonal in this basis.
    """

    def __init__(self, grid: Grid2D, p: EvolutionParams, tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER):
        _require_evolution_model(p)
        self.grid = grid
        self.p = p
        self.tol = tol
        self.max_iter = max_iter
        self.basis = EvenCosineBasis(grid)

    def _split(self, z: np.ndarray) -> Tuple[np.ndarray, float]:
        return z[:-1], float(z[-1])

    def system(self, z: np.ndarray, amplitude: float) -> np.ndarray:
        b, c = z[:-1], z[-1]
        residual = tw_residual_hat(self.basis.synthesize(b), c, self.grid, self.p)
        return np.append(self.basis.project(residual), self.basis.pin(b) - amplitude)

    def profile(self, z: np.ndarray) -> Field2D:
        return Field2D(self.grid, ifft2(self.basis.synthesize(z[:-1])))

    def residual_norm(self, z: np.ndarray) -> float:
        b, c = self._split(z)
        return tw_residual(self.profile(z), c, self.p).max_abs()

    def _preconditioner(self, c: float) -> LinearOperator:
        symbol = tw_linear_symbol(self.grid, c, self.p)[np.ix_(self.basis.rows, self.basis.cols)].ravel()
        magnitude = np.abs(symbol)
        floor = 1e-3 * float(np.median(magnitude[magnitude > 0])) if np.any(magnitude > 0) else 1.0
        safe = np.where(magnitude < floor, np.where(symbol < 0, -floor, floor), symbol)
        inverse = np.append(1.0 / safe, 1.0)
        n = inverse.size
        return LinearOperator((n, n), matvec=lambda v: inverse * np.ravel(v), dtype=float)

    def _jacobian(self, z: np.ndarray, amplitude: float) -> LinearOperator:
        n = z.size

        def matvec(v: np.ndarray) -> np.ndarray:
            v = np.ravel(v)
            return 0.5 * (self.system(z + v, amplitude) - self.system(z - v, amplitude))

        return LinearOperator((n, n), matvec=matvec, dtype=float)

    def solve(self, seed: Field2D, c0: float) -> TravelingWave:
        """
        Newton-correct a seed profile and speed guess.

        Raises:
            AdmissibilityError: if the seed is not admissible or lies outside
                the even-even profile class
            DegenerateWaveError: if the pinned amplitude is zero
            SingularJacobianError: if a Newton linear system cannot be solved
            ConvergenceError: if max_iter iterations do not reach tol
        """
        grid = self.grid
        check_admissible(seed)
        if seed.grid != grid:
            raise ValueError("seed grid does not match the solver grid")
        mismatch = float(np.max(np.abs(reflect(seed, 0.0).values - seed.values)))
        if mismatch > EVENNESS_TOL * max(seed.max_abs(), 1.0):
            raise AdmissibilityError(f"seed is not even in x about x=0 (defect {mismatch:.3e})")

        b0 = self.basis.project(fft2(seed.values))
        defect = float(np.max(np.abs(ifft2(self.basis.synthesize(b0)) - seed.values)))
        if defect > EVENNESS_TOL * max(seed.max_abs(), 1.0):
            raise AdmissibilityError(
                f"seed is not even in y about y=ly/2 or has unresolved modes (projection defect {defect:.3e})"
            )
        amplitude = self.basis.pin(b0)
        if amplitude == 0:
            raise DegenerateWaveError("pinned amplitude A=0 only admits the trivial solution")
        z = np.append(b0, c0)
        logger.info(f"Newton solve for {self.p.tag} at A={amplitude:.6g}, c0={c0:.10g}")

        last = math.inf
        for iteration in range(self.max_iter + 1):
            last = self.residual_norm(z)
            logger.debug(f"Newton iteration {iteration}: residual {last:.3e}, c={z[-1]:.12g}")
            if last <= self.tol:
                break
            if iteration == self.max_iter:
                raise ConvergenceError(f"Newton did not converge in {self.max_iter} iterations", last)
            rhs = -self.system(z, amplitude)
            rhs_norm = float(np.linalg.norm(rhs))
            step, info = gmres(
                self._jacobian(z, amplitude),
                rhs,
                rtol=min(1e-4, 0.1 * rhs_norm) if rhs_norm > 0 else 1e-12,
                atol=0.0,
                restart=min(rhs.size, 200),
                maxiter=50,
                M=self._preconditioner(z[-1]),
            )
            if info < 0 or not np.all(np.isfinite(step)):
                raise SingularJacobianError(amplitude)
            achieved = float(np.linalg.norm(self._jacobian(z, amplitude).matvec(step) - rhs))
            if info > 0:
                logger.warning(f"GMRES stopped after {info} iterations with linear residual {achieved:.3e}")
                if achieved >= 0.99 * rhs_norm:
                    raise SingularJacobianError(amplitude)
            z = z + step

        logger.info(f"Converged to c={z[-1]:.12g} with residual {last:.3e}")
        return TravelingWave(profile=self.profile(z), speed=float(z[-1]), model=self.p,
                             residual_norm=last, amplitude=amplitude)


def solve_tw(seed: Field2D, c0: float, p: EvolutionParams, tol: float = DEFAULT_TOL,
             max_iter: int = DEFAULT_MAX_ITER) -> TravelingWave:
    """
    Solve tw_residual(g, c, p) = 0 for an even profile pinned at g(0, ly/2).

    Args:
        seed: Initial profile, admissible, even in x about x=0 and even in y
            about y=ly/2; its value
            at (0, ly/2) fixes the amplitude A
        c0: Initial speed guess
        p: Model parameters
        tol: Sup-norm tolerance on the grid residual

    Returns:
        Converged traveling wave with residual_norm <= tol
    """
    return TravelingWaveSolver(seed.grid, p, tol=tol, max_iter=max_iter).solve(seed, c0)


def continue_branch(start: TravelingWave, dA: float, n: int, tol: Optional[float] = None,
                    max_iter: int = DEFAULT_MAX_ITER) -> List[TravelingWave]:
    """
    Natural-parameter continuation in the pinned amplitude.

    The first step scales the start profile; later steps extrapolate the
    last two branch points (secant predictor). Non-convergence ends the
    branch early and the partial branch is returned.
    """
    tol = tol if tol is not None else max(start.residual_norm, DEFAULT_TOL)
    solver = TravelingWaveSolver(start.profile.grid, start.model, tol=tol, max_iter=max_iter)
    branch = [start]
    for step_index in range(n):
        current = branch[-1]
        target = current.amplitude + dA
        if len(branch) >= 2:
            previous = branch[-2]
            seed = current.profile * 2.0 - previous.profile
            c_guess = 2.0 * current.speed - previous.speed
        else:
            seed = current.profile * (target / current.amplitude)
            c_guess = current.speed
        try:
            wave = solver.solve(seed, c_guess)
        except (ConvergenceError, SingularJacobianError, DegenerateWaveError) as e:
            logger.warning(f"Continuation stopped at step {step_index + 1} (A={target:.6g}): {e}")
            break
        logger.info(f"Branch point {step_index + 1}/{n}: A={wave.amplitude:.6g}, c={wave.speed:.12g}")
        branch.append(wave)
    return branch
