"""
Adaptive composite Gauss-Legendre quadrature on boxes in (t, x, y).

Integrands are vector valued: they return one array per term, so callers can
recombine the terms with different coefficients without integrating again.
The x-integral can be split along a ridge x = r(t, y) where the integrand has
a gradient discontinuity, so every cell sees a smooth integrand. Cells live in
normalized coordinates (t, y, u) with x = lo + u (hi - lo) on each side of the
ridge. A cell is bisected along every axis while the change between its own
value and the sum over its children exceeds its share of the tolerance.
Cells are visited in a fixed order; the result is bit-stable.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..errors import QuadratureError
from ..models.config import QuadratureConfig

logger = logging.getLogger(__name__)

# Relative size of floating-point noise in a sum of terms, as a fraction of
# the integral of their absolute values.
ROUNDOFF = 1e-13
# Cells evaluated per integrand call.
BATCH_CELLS = 256

Integrand = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
Ridge = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Box:
    """Axis-aligned integration box; t is None for purely spatial integrals."""

    x: Tuple[float, float]
    y: Tuple[float, float]
    t: Optional[Tuple[float, float]] = None


@lru_cache(maxsize=None)
def reference_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    points, weights = np.polynomial.legendre.leggauss(nodes)
    return (points + 1) / 2, weights / 2


@dataclass(frozen=True)
class QuadratureResult:
    """
    Per-term integrals at the finest and the previous refinement level.

    ``previous`` sums every final cell's parent-level value, so
    ``values - previous`` is the Richardson-style change of the last
    bisection. ``magnitudes`` holds the integrals of the absolute values of
    the terms, which set the floating-point floor of any error estimate.
    """

    values: np.ndarray
    previous: np.ndarray
    magnitudes: np.ndarray
    levels: int

    def _weights(self, coefficients: Optional[Sequence[float]]) -> np.ndarray:
        if coefficients is None:
            return np.ones_like(self.values)
        return np.asarray(coefficients, dtype=float)

    def value(self, coefficients: Optional[Sequence[float]] = None) -> float:
        return float(self._weights(coefficients) @ self.values)

    def estimate(self, coefficients: Optional[Sequence[float]] = None) -> float:
        """Difference between the last two levels, floored at roundoff."""
        w = self._weights(coefficients)
        difference = abs(float(w @ (self.values - self.previous)))
        return max(difference, ROUNDOFF * float(np.abs(w) @ self.magnitudes))


@dataclass(frozen=True)
class Cells:
    """
    Quadrature cells in normalized (t, y, u) coordinates.

    ``side`` is 0 left of the ridge and 1 right of it; without a ridge every
    cell has side 0 and u spans the whole x-range.
    """

    lo: np.ndarray
    hi: np.ndarray
    side: np.ndarray

    @property
    def count(self) -> int:
        return self.side.size

    @property
    def volume(self) -> np.ndarray:
        return np.prod(self.hi - self.lo, axis=1)

    def select(self, mask: np.ndarray) -> "Cells":
        return Cells(self.lo[mask], self.hi[mask], self.side[mask])


def initial_cells(per_axis: int, spatial: bool, sides: int) -> Cells:
    """Uniform starting partition with `per_axis` cells along every split axis."""
    edges = np.linspace(0.0, 1.0, per_axis + 1)
    t_ranges = [(0.0, 1.0)] if spatial else list(zip(edges[:-1], edges[1:]))
    pieces = list(zip(edges[:-1], edges[1:]))
    lo, hi, side = [], [], []
    for s, (t0, t1), (y0, y1), (u0, u1) in product(range(sides), t_ranges, pieces, pieces):
        lo.append((t0, y0, u0))
        hi.append((t1, y1, u1))
        side.append(s)
    return Cells(np.array(lo), np.array(hi), np.array(side))


def bisect(cells: Cells, spatial: bool) -> Cells:
    """Children of every cell, the children of one parent stored contiguously."""
    axes = (1, 2) if spatial else (0, 1, 2)
    mid = (cells.lo + cells.hi) / 2
    lo, hi = [], []
    for upper in product((False, True), repeat=len(axes)):
        child_lo, child_hi = cells.lo.copy(), cells.hi.copy()
        for axis, take_upper in zip(axes, upper):
            if take_upper:
                child_lo[:, axis] = mid[:, axis]
            else:
                child_hi[:, axis] = mid[:, axis]
        lo.append(child_lo)
        hi.append(child_hi)
    children = len(lo)
    return Cells(
        np.stack(lo, axis=1).reshape(-1, 3),
        np.stack(hi, axis=1).reshape(-1, 3),
        np.repeat(cells.side, children),
    )


def _axis_rule(lo: np.ndarray, hi: np.ndarray, start: float, length: float,
               nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    ref_x, ref_w = reference_rule(nodes)
    width = (hi - lo)[:, None]
    return start + length * (lo[:, None] + width * ref_x[None, :]), length * width * ref_w[None, :]


def cell_sums(integrand: Integrand, box: Box, ridge: Optional[Ridge], cells: Cells,
              nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate every term over every cell with a tensor Gauss-Legendre rule.

    Returns:
        (integrals, integrals of absolute values), each of shape (terms, cells)
    """
    n = cells.count
    if box.t is None:
        t, wt = np.zeros((n, 1)), np.ones((n, 1))
    else:
        t, wt = _axis_rule(cells.lo[:, 0], cells.hi[:, 0], box.t[0], box.t[1] - box.t[0], nodes)
    y, wy = _axis_rule(cells.lo[:, 1], cells.hi[:, 1], box.y[0], box.y[1] - box.y[0], nodes)
    u, wu = _axis_rule(cells.lo[:, 2], cells.hi[:, 2], 0.0, 1.0, nodes)
    T, Y, U = t[:, :, None, None], y[:, None, :, None], u[:, None, None, :]

    x0, x1 = box.x
    if ridge is None:
        seg_lo, seg_hi = np.full(T.shape, x0), np.full(T.shape, x1)
    else:
        shape = (n, t.shape[1], y.shape[1], 1)
        split = np.clip(np.broadcast_to(ridge(T, Y), shape), x0, x1)
        left = (cells.side == 0)[:, None, None, None]
        seg_lo = np.where(left, x0, split)
        seg_hi = np.where(left, split, x1)
    length = seg_hi - seg_lo
    X = seg_lo + length * U
    weights = wt[:, :, None, None] * wy[:, None, :, None] * wu[:, None, None, :] * length
    terms = integrand(np.broadcast_to(T, X.shape), X, np.broadcast_to(Y, X.shape))
    return np.sum(terms * weights, axis=(2, 3, 4)), np.sum(np.abs(terms) * weights, axis=(2, 3, 4))


def _batched_sums(integrand: Integrand, box: Box, ridge: Optional[Ridge], cells: Cells,
                  nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    parts = [
        cell_sums(integrand, box, ridge, cells.select(slice(start, start + BATCH_CELLS)), nodes)
        for start in range(0, cells.count, BATCH_CELLS)
    ]
    return np.concatenate([p[0] for p in parts], axis=1), np.concatenate([p[1] for p in parts], axis=1)


def integrate(integrand: Integrand, box: Box, ridge: Optional[Ridge] = None,
              config: Optional[QuadratureConfig] = None) -> QuadratureResult:
    """
    Integrate with adaptive bisection until successive levels agree.

    Starting from config.initial_cells cells per axis (per ridge side), every
    active cell is bisected along each axis. A cell is retired once the
    change between its value and the sum over its children is within its
    volume share of config.tol (or its roundoff floor) for every term; the
    remaining children form the next level. Integration stops once the
    total change of the last level is within config.tol.

    Raises:
        QuadratureError: if the change between levels stops decreasing
            before the tolerance is met
    """
    config = config or QuadratureConfig()
    spatial = box.t is None
    sides = 1 if ridge is None else 2
    active = initial_cells(config.initial_cells, spatial, sides)
    coarse, _ = _batched_sums(integrand, box, ridge, active, config.nodes)

    retired_values = np.zeros(coarse.shape[0])
    retired_previous = np.zeros_like(retired_values)
    retired_magnitudes = np.zeros_like(retired_values)
    previous_excess: Optional[float] = None
    values = previous = magnitudes = retired_values
    for level in range(1, config.max_levels + 1):
        children = bisect(active, spatial)
        fine, fine_abs = _batched_sums(integrand, box, ridge, children, config.nodes)
        per_parent = fine.reshape(fine.shape[0], active.count, -1).sum(axis=2)
        per_parent_abs = fine_abs.reshape(fine.shape[0], active.count, -1).sum(axis=2)

        values = retired_values + per_parent.sum(axis=1)
        previous = retired_previous + coarse.sum(axis=1)
        magnitudes = retired_magnitudes + per_parent_abs.sum(axis=1)
        difference = np.abs(values - previous)
        floor = ROUNDOFF * magnitudes
        excess = float(np.max(np.maximum(difference - np.maximum(floor, config.tol), 0.0)))
        logger.debug(f"quadrature level {level} ({active.count} active cells): max change {np.max(difference):.3e}")
        if excess == 0.0:
            return QuadratureResult(values, previous, magnitudes, level)
        if previous_excess is not None and excess >= previous_excess:
            raise QuadratureError(
                f"quadrature error estimate stopped decreasing at level {level} "
                f"({excess:.3e} after {previous_excess:.3e})"
            )
        previous_excess = excess

        share = config.tol * active.volume / sides
        change = np.abs(per_parent - coarse)
        done = np.all(change <= np.maximum(share[None, :], ROUNDOFF * per_parent_abs), axis=0)
        retired_values = retired_values + per_parent[:, done].sum(axis=1)
        retired_previous = retired_previous + coarse[:, done].sum(axis=1)
        retired_magnitudes = retired_magnitudes + per_parent_abs[:, done].sum(axis=1)
        if np.all(done):
            return QuadratureResult(values, previous, magnitudes, level)
        keep = np.repeat(~done, children.count // active.count)
        active = children.select(keep)
        coarse = fine[:, keep]
    logger.warning(f"quadrature reached {config.max_levels} refinement levels without meeting tol={config.tol:.1e}")
    return QuadratureResult(values, previous, magnitudes, config.max_levels)
