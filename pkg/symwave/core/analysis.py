"""
Symmetry and steadiness detectors for snapshot series.

Asymmetry is measured in relative discrete L2 norm,
A(lambda) = ||u - u(2 lambda - x, y)|| / ||u||, computed from Fourier
coefficients. On the torus an axis lambda and lambda + lx/2 describe the same
reflection, so axes are reported in [0, lx/2).
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..errors import InsufficientDataError, SpeedUndefinedError, ZeroFieldError
from ..models.grid import Field2D, Grid2D, Snapshot
from ..models.params import AnalysisThresholds
from ..models.reports import SteadinessReport, SymmetryReport
from .spectral import fft2, l2_norm_hat, reflect_hat, shift_hat

logger = logging.getLogger(__name__)

REFINE_XATOL = 1e-12


def _asymmetry_sq(u_hat: np.ndarray, grid: Grid2D, lam: float, norm_sq: float) -> float:
    diff = u_hat - reflect_hat(u_hat, grid, lam)
    return float(np.sum(np.abs(diff) ** 2)) / norm_sq


def _nonzero_hat(u: Field2D) -> Tuple[np.ndarray, float]:
    u_hat = fft2(u.values)
    norm_sq = float(np.sum(np.abs(u_hat) ** 2))
    if norm_sq == 0:
        raise ZeroFieldError()
    return u_hat, norm_sq


def asymmetry(u: Field2D, lam: float) -> float:
    """
    Relative L2 distance between u and its reflection about x = lam.

    Raises:
        ZeroFieldError: for the zero field
    """
    u_hat, norm_sq = _nonzero_hat(u)
    return math.sqrt(_asymmetry_sq(u_hat, u.grid, lam, norm_sq))


def find_axis(u: Field2D) -> Tuple[float, float]:
    """
    Locate the axis of symmetry minimizing asymmetry(u, .).

    A scan over nx candidate axes spaced dx/2 apart is refined by bounded
    scalar minimization to ~1e-12 in lambda. Exact ties keep the smallest
    candidate. A large score is returned, not raised: the caller decides.

    Returns:
        (lambda_star in [0, lx/2), asymmetry score)
    """
    grid = u.grid
    u_hat, norm_sq = _nonzero_hat(u)
    half_period = grid.lx / 2
    spacing = half_period / grid.nx
    candidates = np.arange(grid.nx) * spacing
    scores = np.array([_asymmetry_sq(u_hat, grid, lam, norm_sq) for lam in candidates])
    best = int(np.argmin(scores))
    lam_star, score_sq = float(candidates[best]), float(scores[best])
    if score_sq > 0:
        result = minimize_scalar(
            lambda lam: _asymmetry_sq(u_hat, grid, lam, norm_sq),
            bounds=(lam_star - spacing, lam_star + spacing),
            method="bounded",
            options={"xatol": REFINE_XATOL},
        )
        if result.fun < score_sq:
            lam_star, score_sq = float(result.x), float(result.fun)
    lam_star = lam_star % half_period
    # The modulo can round up to the period itself.
    if lam_star >= half_period:
        lam_star = 0.0
    return lam_star, math.sqrt(max(score_sq, 0.0))


def _misfit(target_hat: np.ndarray, source_hat: np.ndarray, grid: Grid2D, delta: float) -> float:
    return float(np.sum(np.abs(target_hat - shift_hat(source_hat, grid, delta)) ** 2))


def _phase_slope_correction(cross: np.ndarray, xi: np.ndarray, delta: float) -> float:
    """
    Weighted least-squares fit of the residual cross-spectrum phase.

    Weights are |cross|^2, so harmonics polluted by aliasing from
    non-smooth data barely contribute.
    """
    residual = np.angle(cross * np.exp(1j * xi * delta))
    weight = np.abs(cross) ** 2
    denominator = float(np.sum(weight * xi**2))
    if denominator == 0:
        return 0.0
    return -float(np.sum(weight * xi * residual)) / denominator


def estimate_shift(f1: Field2D, f2: Field2D) -> float:
    """
    Estimate delta with f2 ~ f1(x - delta), wrapped to [-lx/2, lx/2).

    The phase of the dominant x-harmonic of the cross spectrum gives a first
    guess; the L2 misfit (equivalently the L2 correlation) is then minimized
    within one grid spacing. A final phase-slope fit over the dealiased band
    removes the bias that Gibbs and aliasing errors in the top harmonics put
    on the misfit for peaked or kinked profiles.

    Raises:
        SpeedUndefinedError: if the fields carry no x-dependence
    """
    grid = f1.grid
    h1, h2 = fft2(f1.values), fft2(f2.values)
    xi = grid.xi()
    harmonics = np.arange(1, grid.nx // 2)
    cross = np.sum(h2[:, harmonics] * np.conj(h1[:, harmonics]), axis=0)
    power = np.abs(cross)
    if power.size == 0 or power.max() == 0:
        raise SpeedUndefinedError()
    # Prefer the fundamental unless it is negligible.
    index = 0 if power[0] >= 1e-3 * power.max() else int(np.argmax(power))
    j = harmonics[index]
    base = -np.angle(cross[index]) / xi[j]
    period = grid.lx / j
    guesses = base + period * np.arange(j)
    misfits = [_misfit(h2, h1, grid, g) for g in guesses]
    delta = float(guesses[int(np.argmin(misfits))])
    best = min(misfits)
    if best > 0:
        result = minimize_scalar(
            lambda d: _misfit(h2, h1, grid, d),
            bounds=(delta - grid.dx, delta + grid.dx),
            method="bounded",
            options={"xatol": REFINE_XATOL},
        )
        if result.fun < best:
            delta = float(result.x)
    band = harmonics < grid.nx / 3
    delta += _phase_slope_correction(cross[band], xi[harmonics[band]], delta)
    return (delta + grid.lx / 2) % grid.lx - grid.lx / 2


def estimate_speed(s1: Snapshot, s2: Snapshot) -> float:
    """
    Translation speed between two snapshots.

    Raises:
        SpeedUndefinedError: for non-increasing times or x-independent fields
    """
    if s2.t <= s1.t:
        raise SpeedUndefinedError("speed undefined: snapshots must be in increasing time order")
    return estimate_shift(s1.field, s2.field) / (s2.t - s1.t)


def accumulated_displacement(series: Sequence[Snapshot]) -> np.ndarray:
    """Displacement of every snapshot relative to the first, summed over consecutive pairs."""
    shifts = [0.0]
    for previous, current in zip(series, series[1:]):
        shifts.append(shifts[-1] + estimate_shift(previous.field, current.field))
    return np.array(shifts)


def steadiness_report(series: Sequence[Snapshot],
                      thresholds: Optional[AnalysisThresholds] = None) -> SteadinessReport:
    """
    Decide whether a series is steady in the x-direction.

    The speed comes from the accumulated first-to-last displacement; the shape
    error compares each snapshot with the first one translated by c*(t - t0).

    Raises:
        InsufficientDataError: for fewer than 3 snapshots
        SpeedUndefinedError: propagated from the shift estimator
    """
    thresholds = thresholds or AnalysisThresholds()
    if len(series) < 3:
        raise InsufficientDataError("steadiness needs at least 3 snapshots")
    first = series[0]
    duration = series[-1].t - first.t
    if duration <= 0:
        raise SpeedUndefinedError("speed undefined: snapshots must span a positive time")
    speed = float(accumulated_displacement(series)[-1] / duration)
    grid = first.field.grid
    reference, norm_sq = _nonzero_hat(first.field)
    norm = math.sqrt(norm_sq)
    errors = []
    for snapshot in series:
        shifted = shift_hat(reference, grid, speed * (snapshot.t - first.t))
        error = math.sqrt(float(np.sum(np.abs(fft2(snapshot.field.values) - shifted) ** 2))) / norm
        errors.append((snapshot.t, error))
    worst = max(e for _, e in errors)
    if worst < thresholds.steady:
        verdict = "steady"
    elif worst > thresholds.steady * thresholds.not_steady_factor:
        verdict = "not-steady"
    else:
        verdict = "inconclusive"
    logger.info(f"Steadiness verdict {verdict}: c={speed:.10g}, max shape error {worst:.3e}")
    return SteadinessReport(speed_estimate=speed, shape_error_of_t=errors, verdict=verdict,
                            thresholds=thresholds)


def symmetry_report(series: Sequence[Snapshot],
                    thresholds: Optional[AnalysisThresholds] = None) -> SymmetryReport:
    """
    Track the axis of symmetry over a series and fit it by an affine law.

    The axis is unwrapped modulo lx/2 before fitting; the quadratic
    coefficient of the fit is reported as curvature.
    """
    thresholds = thresholds or AnalysisThresholds()
    if not series:
        raise InsufficientDataError("symmetry report needs at least one snapshot")
    times, axes, scores = [], [], []
    for snapshot in series:
        lam, score = find_axis(snapshot.field)
        times.append(snapshot.t)
        axes.append(lam)
        scores.append(score)
    half_period = series[0].field.grid.lx / 2
    unwrapped = np.unwrap(np.array(axes), period=half_period)
    slope, curvature = 0.0, 0.0
    if len(series) >= 2:
        slope = float(np.polyfit(times, unwrapped, 1)[0])
    if len(series) >= 3:
        curvature = float(2 * np.polyfit(times, unwrapped, 2)[0])
    return SymmetryReport(
        lambda_of_t=list(zip(times, axes)),
        asymmetry_of_t=list(zip(times, scores)),
        lambda_dot_estimate=slope,
        lambda_curvature=curvature,
        thresholds=thresholds,
    )


def shape_error(u: Field2D, reference: Field2D, delta_x: float) -> float:
    """||u - reference(x - delta_x)|| / ||reference||."""
    ref_hat, norm_sq = _nonzero_hat(reference)
    shifted = shift_hat(ref_hat, u.grid, delta_x)
    return l2_norm_hat(fft2(u.values) - shifted, u.grid) / l2_norm_hat(ref_hat, u.grid)
