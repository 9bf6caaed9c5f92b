"""
Weak formulations of the CH-KP and plate equations evaluated by quadrature.

With L = d/dx - d^3/dx^3 the CH-KP weak residual of u against a compactly
supported test function phi is

    W(u, phi) = <u, L phi_t> + <kappa u + 3/2 u^2 + 1/2 u_x^2, phi_xx>
                - 1/2 <u^2, phi_xxxx> + <u, phi_yy>,

which equals <strong residual, phi> for smooth u. It only needs u and u_x,
so it is defined for the peaked field a*exp(-|x + theta y - c t|) as well.
The steady forms replace <u, L phi_t> by -c <U, L psi_x>.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.hermite import hermval

from ..errors import DerivativeOrderError, ModelError
from ..models.config import (
    BasisConfig,
    FieldSpec,
    ManufacturedFieldSpec,
    PeakonFieldSpec,
    ProfileFieldSpec,
    QuadratureConfig,
    WeakResidualConfig,
    ZeroFieldSpec,
)
from ..models.grid import Field2D
from ..models.params import BumpSpec, BumpSpec2D, ChkpNormalized, HcpParams, PeakonParams
from ..models.reports import WeakResidual, ZeroSet, ZeroSetPoint
from .quadrature import Box, QuadratureResult, integrate
from .spectral import evaluate

logger = logging.getLogger(__name__)

FormParams = Union[ChkpNormalized, HcpParams]

# exp(-1/w) underflows below this w
_BUMP_CUTOFF = 1.0 / 700.0


@lru_cache(maxsize=None)
def _bump_polynomial(order: int) -> Polynomial:
    """P_n with B^(n)(s) = P_n(s) / (1 - s^2)^(2n) * B(s)."""
    if order == 0:
        return Polynomial([1.0])
    previous = _bump_polynomial(order - 1)
    m = order - 1
    w = Polynomial([1.0, 0.0, -1.0])
    s = Polynomial([0.0, 1.0])
    return previous.deriv() * w**2 + (4 * m * s * w - 2 * s) * previous


def bump_derivative(s, order: int) -> np.ndarray:
    """n-th derivative of B(s) = exp(-1/(1 - s^2)) on |s| < 1, zero outside."""
    s = np.asarray(s, dtype=float)
    w = 1.0 - s**2
    inside = w > _BUMP_CUTOFF
    w_safe = np.where(inside, w, 1.0)
    values = _bump_polynomial(order)(s) * w_safe ** (-2 * order) * np.exp(-1.0 / w_safe)
    return np.where(inside, values, 0.0)


# ---------------------------------------------------------------------------
# Test functions
# ---------------------------------------------------------------------------


class ClosedFormTestFunction(ABC):
    """Smooth compactly supported test function with closed-form derivatives."""

    @abstractmethod
    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        """d^pt/dt d^px/dx d^py/dy of the function at (t, x, y)."""

    @abstractmethod
    def box(self) -> Box:
        """A box containing the support."""

    def __call__(self, t, x, y) -> np.ndarray:
        return self.derivative(0, 0, 0, t, x, y)


class Bump(ClosedFormTestFunction):
    """Tensor-product bump built from a BumpSpec (space-time) or BumpSpec2D (spatial)."""

    def __init__(self, spec: Union[BumpSpec, BumpSpec2D]):
        self.spec = spec
        self.spatial = isinstance(spec, BumpSpec2D)
        if self.spatial:
            (self.x0, self.y0), (self.rx, self.ry) = spec.center, spec.radii
            self.t0, self.rt = 0.0, 1.0
        else:
            (self.t0, self.x0, self.y0), (self.rt, self.rx, self.ry) = spec.center, spec.radii

    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        if self.spatial and pt:
            raise DerivativeOrderError("a spatial bump has no time derivative")
        value = (
            self.spec.amplitude
            * bump_derivative((np.asarray(x) - self.x0) / self.rx, px) / self.rx**px
            * bump_derivative((np.asarray(y) - self.y0) / self.ry, py) / self.ry**py
        )
        if not self.spatial:
            value = value * bump_derivative((np.asarray(t) - self.t0) / self.rt, pt) / self.rt**pt
        return value

    def box(self) -> Box:
        x = (self.x0 - self.rx, self.x0 + self.rx)
        y = (self.y0 - self.ry, self.y0 + self.ry)
        return Box(x=x, y=y, t=None if self.spatial else (self.t0 - self.rt, self.t0 + self.rt))


@dataclass(frozen=True)
class AffineAxis:
    """Axis of symmetry lambda(t) = lambda0 + speed * t."""

    lambda0: float
    speed: float = 0.0

    def __call__(self, t) -> np.ndarray:
        return self.lambda0 + self.speed * np.asarray(t, dtype=float)


class ReflectedTestFunction(ClosedFormTestFunction):
    """
    T_lambda phi (t, x, y) = phi(t, 2 lambda(t) - x, y).

    With X = 2 lambda(t) - x the chain rule gives
    (T phi)_x = -(phi_X), (T phi)_y = (phi_y), (T phi)_t = (phi_t) + 2 lambda' (phi_X),
    all evaluated at (t, X, y).
    """

    def __init__(self, base: ClosedFormTestFunction, axis: AffineAxis):
        self.base = base
        self.axis = axis

    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        if pt > 1:
            raise DerivativeOrderError("reflected test functions provide one time derivative")
        mirrored = 2 * self.axis(t) - np.asarray(x)
        value = self.base.derivative(pt, px, py, t, mirrored, y)
        if pt == 1:
            value = value + 2 * self.axis.speed * self.base.derivative(0, px + 1, py, t, mirrored, y)
        return (-1) ** px * value

    def box(self) -> Box:
        inner = self.base.box()
        if inner.t is None:
            lams = [float(self.axis(0.0))]
        else:
            lams = [float(self.axis(inner.t[0])), float(self.axis(inner.t[1]))]
        x = (2 * min(lams) - inner.x[1], 2 * max(lams) - inner.x[0])
        return Box(x=x, y=inner.y, t=inner.t)


def as_test_function(phi: Union[BumpSpec, BumpSpec2D, ClosedFormTestFunction]) -> ClosedFormTestFunction:
    return phi if isinstance(phi, ClosedFormTestFunction) else Bump(phi)


def reflect_test_function(phi: Union[BumpSpec, ClosedFormTestFunction],
                          lambda_fn: AffineAxis) -> ReflectedTestFunction:
    """Closed-form T_lambda phi for an affine axis; applying it twice gives phi back."""
    return ReflectedTestFunction(as_test_function(phi), lambda_fn)


# ---------------------------------------------------------------------------
# Closed-form fields
# ---------------------------------------------------------------------------


class ClosedFormField(ABC):
    """A field u(t, x, y) evaluable pointwise together with u_x."""

    @abstractmethod
    def value(self, t, x, y) -> np.ndarray:
        pass

    @abstractmethod
    def dx(self, t, x, y) -> np.ndarray:
        pass

    def ridge(self, t, y) -> Optional[np.ndarray]:
        """x-position of a gradient discontinuity at (t, y), if any."""
        return None

    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        raise ModelError(f"{type(self).__name__} has no closed-form derivative of order ({pt}, {px}, {py})")

    @property
    def has_ridge(self) -> bool:
        return False


class ZeroField(ClosedFormField):
    def value(self, t, x, y) -> np.ndarray:
        return np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape)

    def dx(self, t, x, y) -> np.ndarray:
        return self.value(t, x, y)

    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        return self.value(t, x, y)


class PeakonField(ClosedFormField):
    """a exp(-|x + theta y - c t|); derivatives are the one-sided limits off the ridge."""

    def __init__(self, params: PeakonParams):
        self.params = params

    def _phase(self, t, x, y) -> np.ndarray:
        p = self.params
        return np.asarray(x) + p.theta * np.asarray(y) - p.c * np.asarray(t)

    def value(self, t, x, y) -> np.ndarray:
        return self.params.a * np.exp(-np.abs(self._phase(t, x, y)))

    def dx(self, t, x, y) -> np.ndarray:
        s = self._phase(t, x, y)
        return -self.params.a * np.sign(s) * np.exp(-np.abs(s))

    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        p = self.params
        s = self._phase(t, x, y)
        sigma = np.sign(s)
        return p.a * (-sigma) ** px * (-sigma * p.theta) ** py * (sigma * p.c) ** pt * np.exp(-np.abs(s))

    def ridge(self, t, y) -> np.ndarray:
        return self.params.c * t - self.params.theta * np.asarray(y)

    @property
    def has_ridge(self) -> bool:
        return True


def _gaussian_derivative(z, width: float, order: int) -> np.ndarray:
    r = np.asarray(z, dtype=float) / width
    coeffs = np.zeros(order + 1)
    coeffs[order] = 1.0
    return (-1) ** order * hermval(r, coeffs) * np.exp(-(r**2)) / width**order


class ManufacturedField(ClosedFormField):
    """Smooth field a G(x - x0 - v t) G(y - y0) (1 + b t) with Gaussian G."""

    def __init__(self, spec: ManufacturedFieldSpec):
        self.spec = spec

    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        if pt > 1:
            raise DerivativeOrderError("manufactured fields provide one time derivative")
        s = self.spec
        (x0, y0), (wx, wy) = s.center, s.widths
        t = np.asarray(t, dtype=float)
        z = np.asarray(x) - x0 - s.velocity * t
        gy = _gaussian_derivative(np.asarray(y) - y0, wy, py)
        growth = 1 + s.growth * t
        if pt == 0:
            return s.amplitude * growth * _gaussian_derivative(z, wx, px) * gy
        return s.amplitude * gy * (
            -s.velocity * growth * _gaussian_derivative(z, wx, px + 1)
            + s.growth * _gaussian_derivative(z, wx, px)
        )

    def value(self, t, x, y) -> np.ndarray:
        return self.derivative(0, 0, 0, t, x, y)

    def dx(self, t, x, y) -> np.ndarray:
        return self.derivative(0, 1, 0, t, x, y)


class ProfileField(ClosedFormField):
    """Sampled periodic profile U translated with constant speed, interpolated spectrally."""

    def __init__(self, profile: Field2D, speed: float = 0.0):
        self.profile = profile
        self.speed = speed

    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        shifted = np.asarray(x) - self.speed * np.asarray(t)
        return (-self.speed) ** pt * evaluate(self.profile, shifted, y, px + pt, py)

    def value(self, t, x, y) -> np.ndarray:
        return self.derivative(0, 0, 0, t, x, y)

    def dx(self, t, x, y) -> np.ndarray:
        return self.derivative(0, 1, 0, t, x, y)


class LiftedField(ClosedFormField):
    """u(t, x, y) = U(x - c (t - t0), y) built from the t = 0 slice of U."""

    def __init__(self, base: ClosedFormField, speed: float, t0: float = 0.0):
        self.base = base
        self.speed = speed
        self.t0 = t0

    def _x(self, t, x) -> np.ndarray:
        return np.asarray(x) - self.speed * (np.asarray(t) - self.t0)

    def value(self, t, x, y) -> np.ndarray:
        return self.base.value(0.0, self._x(t, x), y)

    def dx(self, t, x, y) -> np.ndarray:
        return self.base.dx(0.0, self._x(t, x), y)

    def derivative(self, pt: int, px: int, py: int, t, x, y) -> np.ndarray:
        return (-self.speed) ** pt * self.base.derivative(0, px + pt, py, 0.0, self._x(t, x), y)

    def ridge(self, t, y) -> Optional[np.ndarray]:
        base = self.base.ridge(0.0, y)
        return None if base is None else base + self.speed * (t - self.t0)

    @property
    def has_ridge(self) -> bool:
        return self.base.has_ridge


def lemma_lift(U: ClosedFormField, c: float, t0: float = 0.0) -> LiftedField:
    """Lift a steady profile with speed c to the space-time field U(x - c (t - t0), y)."""
    return LiftedField(U, c, t0)


def field_from_spec(spec: FieldSpec) -> ClosedFormField:
    """Build the closed-form field named by a config entry."""
    if isinstance(spec, ZeroFieldSpec):
        return ZeroField()
    if isinstance(spec, PeakonFieldSpec):
        return PeakonField(spec.peakon)
    if isinstance(spec, ManufacturedFieldSpec):
        return ManufacturedField(spec)
    if isinstance(spec, ProfileFieldSpec):
        from ..utils.snapshots import read_snapshot

        snapshot, _ = read_snapshot(spec.path)
        return ProfileField(snapshot.field, spec.speed)
    raise ModelError(f"unknown field kind {spec!r}")


# ---------------------------------------------------------------------------
# Integrands
# ---------------------------------------------------------------------------


def _stack(*terms) -> np.ndarray:
    return np.stack(np.broadcast_arrays(*terms))


def _ridge_for(u: ClosedFormField, steady: bool):
    if not u.has_ridge:
        return None
    if steady:
        return lambda t, y: u.ridge(0.0, y)
    return u.ridge


def _evaluate(result: QuadratureResult, coefficients: Optional[Sequence[float]] = None) -> WeakResidual:
    return WeakResidual(
        value=result.value(coefficients),
        quadrature_error_estimate=result.estimate(coefficients),
        levels=result.levels,
    )


def _transient_terms(u: ClosedFormField, phi: ClosedFormTestFunction, p: FormParams):
    """Integrand terms of the time-dependent weak forms; all coefficients are 1."""

    def integrand(t, x, y):
        U, Ux = u.value(t, x, y), u.dx(t, x, y)

        def d(pt, px, py):
            return phi.derivative(pt, px, py, t, x, y)

        transport = U * (d(1, 1, 0) - d(1, 3, 0))
        phi_xx, phi_xxxx = d(0, 2, 0), d(0, 4, 0)
        if isinstance(p, ChkpNormalized):
            return _stack(
                transport,
                p.kappa * U * phi_xx,
                U * d(0, 0, 2),
                (1.5 * U**2 + 0.5 * Ux**2) * phi_xx,
                -0.5 * U**2 * phi_xxxx,
            )
        return _stack(
            transport,
            -p.alpha * U * d(0, 0, 2),
            p.beta * U * d(0, 2, 2),
            (1.5 * U**2 + 0.5 * p.gamma * Ux**2) * phi_xx,
            -0.5 * p.gamma * U**2 * phi_xxxx,
        )

    return integrand


def _steady_terms(U: ClosedFormField, psi: ClosedFormTestFunction, p: FormParams):
    """
    Integrand terms of the steady weak forms at t = 0.

    Order: [-U L psi_x (multiplied by c), two linear terms, two quadratic terms].
    """

    def integrand(t, x, y):
        u, ux = U.value(0.0, x, y), U.dx(0.0, x, y)

        def d(px, py):
            return psi.derivative(0, px, py, 0.0, x, y)

        psi_xx, psi_xxxx = d(2, 0), d(4, 0)
        transport = -u * (psi_xx - psi_xxxx)
        if isinstance(p, ChkpNormalized):
            return _stack(
                transport,
                p.kappa * u * psi_xx,
                u * d(0, 2),
                (1.5 * u**2 + 0.5 * ux**2) * psi_xx,
                -0.5 * u**2 * psi_xxxx,
            )
        return _stack(
            transport,
            -p.alpha * u * d(0, 2),
            p.beta * u * d(2, 2),
            (1.5 * u**2 + 0.5 * p.gamma * ux**2) * psi_xx,
            -0.5 * p.gamma * u**2 * psi_xxxx,
        )

    return integrand


def _spatial(psi) -> ClosedFormTestFunction:
    psi = as_test_function(psi)
    if psi.box().t is not None:
        raise ModelError("steady weak forms need a spatial test function (BumpSpec2D)")
    return psi


def _space_time(phi) -> ClosedFormTestFunction:
    phi = as_test_function(phi)
    if phi.box().t is None:
        raise ModelError("time-dependent weak forms need a space-time test function (BumpSpec)")
    return phi


def weak_residual(u: ClosedFormField, phi, p: FormParams,
                  config: Optional[QuadratureConfig] = None) -> WeakResidual:
    """Time-dependent weak residual of either model."""
    phi = _space_time(phi)
    result = integrate(_transient_terms(u, phi, p), phi.box(), _ridge_for(u, False), config)
    return _evaluate(result)


def steady_weak_residual(U: ClosedFormField, c: float, psi, p: FormParams,
                         config: Optional[QuadratureConfig] = None) -> WeakResidual:
    """Steady weak residual of either model for a profile U moving with speed c."""
    psi = _spatial(psi)
    result = integrate(_steady_terms(U, psi, p), psi.box(), _ridge_for(U, True), config)
    return _evaluate(result, [c, 1.0, 1.0, 1.0, 1.0])


def weak_residual_chkp(u: ClosedFormField, phi, kappa: float,
                       config: Optional[QuadratureConfig] = None) -> WeakResidual:
    """
    CH-KP weak residual against a space-time bump.

    Raises:
        QuadratureError: if refinement stops improving the estimate
    """
    return weak_residual(u, phi, ChkpNormalized(kappa=kappa), config)


def steady_weak_residual_chkp(U: ClosedFormField, c: float, psi, kappa: float,
                              config: Optional[QuadratureConfig] = None) -> WeakResidual:
    return steady_weak_residual(U, c, psi, ChkpNormalized(kappa=kappa), config)


def weak_residual_hcp(u: ClosedFormField, phi, alpha: float, beta: float, gamma: float,
                      config: Optional[QuadratureConfig] = None) -> WeakResidual:
    return weak_residual(u, phi, HcpParams(alpha=alpha, beta=beta, gamma=gamma), config)


def steady_weak_residual_hcp(U: ClosedFormField, c: float, psi, alpha: float, beta: float,
                             gamma: float, config: Optional[QuadratureConfig] = None) -> WeakResidual:
    return steady_weak_residual(U, c, psi, HcpParams(alpha=alpha, beta=beta, gamma=gamma), config)


def strong_residual_density(u: ClosedFormField, p: FormParams, t, x, y) -> np.ndarray:
    """Pointwise strong residual of a smooth field, with the flux derivative expanded."""
    d = lambda pt, px, py: u.derivative(pt, px, py, t, x, y)  # noqa: E731
    U, Ux, Uxx, Uxxx, Uxxxx = (d(0, k, 0) for k in range(5))
    gamma = 1.0 if isinstance(p, ChkpNormalized) else p.gamma
    result = d(1, 1, 0) - d(1, 3, 0)
    result = result + 3 * Ux**2 + 3 * U * Uxx - gamma * (2 * Uxx**2 + 3 * Ux * Uxxx + U * Uxxxx)
    if isinstance(p, ChkpNormalized):
        return result + p.kappa * Uxx + d(0, 0, 2)
    return result - p.alpha * d(0, 0, 2) + p.beta * d(0, 2, 2)


def strong_residual_pairing(u: ClosedFormField, phi, p: FormParams,
                            config: Optional[QuadratureConfig] = None) -> WeakResidual:
    """<strong residual of u, phi> for smooth u; equals the weak residual."""
    phi = _space_time(phi)

    def integrand(t, x, y):
        return _stack(strong_residual_density(u, p, t, x, y) * phi.derivative(0, 0, 0, t, x, y))

    return _evaluate(integrate(integrand, phi.box(), None, config))


def _transport_terms(u: ClosedFormField, phi: ClosedFormTestFunction):
    def integrand(t, x, y):
        U = u.value(t, x, y)

        def d(pt, px):
            return phi.derivative(pt, px, 0, t, x, y)

        return _stack(U * (d(1, 1) - d(1, 3)), U * (d(0, 2) - d(0, 4)))

    return integrand


def weak_shape_residual(u: ClosedFormField, phi, lambda_dot: float,
                        config: Optional[QuadratureConfig] = None) -> WeakResidual:
    """
    Weak form of L(u_t + lambda' u_x) = 0: <u, L phi_t> + lambda' <u, L phi_x>.

    Vanishes when u translates rigidly with speed lambda'.
    """
    phi = _space_time(phi)
    result = integrate(_transport_terms(u, phi), phi.box(), _ridge_for(u, False), config)
    return _evaluate(result, [1.0, lambda_dot])


def symmetry_transfer_defect(u: ClosedFormField, phi, axis: AffineAxis, p: FormParams,
                             config: Optional[QuadratureConfig] = None) -> WeakResidual:
    """
    W(u, T phi) - [W(u, phi) - 2 <u, L phi_t> - 2 lambda' <u, L phi_x>].

    Zero whenever u(t, ., y) is symmetric about lambda(t); the identity is the
    change of variables x -> 2 lambda(t) - x applied to the weak form.
    """
    phi = _space_time(phi)
    reflected = reflect_test_function(phi, axis)
    ridge = _ridge_for(u, False)
    mirrored = _evaluate(integrate(_transient_terms(u, reflected, p), reflected.box(), ridge, config))
    direct = _evaluate(integrate(_transient_terms(u, phi, p), phi.box(), ridge, config))
    transport = _evaluate(integrate(_transport_terms(u, phi), phi.box(), ridge, config),
                          [2.0, 2.0 * axis.speed])
    return WeakResidual(
        value=mirrored.value - direct.value + transport.value,
        quadrature_error_estimate=(
            mirrored.quadrature_error_estimate
            + direct.quadrature_error_estimate
            + transport.quadrature_error_estimate
        ),
        levels=max(mirrored.levels, direct.levels, transport.levels),
    )


def evaluate_config(cfg: WeakResidualConfig, field: Optional[ClosedFormField] = None) -> WeakResidual:
    """Evaluate the weak residual described by a weak-residual config."""
    u = field if field is not None else field_from_spec(cfg.field)
    phi = Bump(cfg.test_function)
    if cfg.form.startswith("chkp"):
        p: FormParams = ChkpNormalized(kappa=cfg.kappa)
    else:
        p = HcpParams(alpha=cfg.alpha, beta=cfg.beta, gamma=cfg.gamma)
    if cfg.form.endswith("_steady"):
        return steady_weak_residual(u, cfg.c, phi, p, cfg.quadrature)
    return weak_residual(u, phi, p, cfg.quadrature)


# ---------------------------------------------------------------------------
# Peakon zero-set scan
# ---------------------------------------------------------------------------


def default_basis(theta: float, config: Optional[BasisConfig] = None) -> List[BumpSpec2D]:
    """
    Deterministic lattice of spatial bumps following the ridge x = -theta y.

    Every scale gets the same number of bumps, spread across the ridge and
    both tails; every other bump is lifted off y = 0 so the basis also sees
    variation in y.
    """
    config = config or BasisConfig()
    per_scale = math.ceil(config.count / len(config.scales))
    offsets = np.linspace(-config.span, config.span, per_scale)
    basis = []
    for scale in config.scales:
        for k, ox in enumerate(offsets):
            oy = 0.5 * scale if k % 2 else 0.0
            basis.append(BumpSpec2D(center=(float(ox - theta * oy), oy), radii=(scale, scale)))
    return basis


def _ratio(value: float, estimate: float) -> float:
    if value == 0.0:
        return 0.0
    return abs(value) / estimate if estimate > 0 else math.inf


def peakon_scan(theta: float, kappa: float, a_grid: Iterable[float], c_grid: Iterable[float],
                psi_basis: Optional[Sequence[Union[BumpSpec2D, ClosedFormTestFunction]]] = None,
                threshold: float = 3.0, config: Optional[QuadratureConfig] = None) -> ZeroSet:
    """
    Map where the steady CH-KP residual of a exp(-|x + theta y|) vanishes.

    The residual is affine in c and quadratic in a, so each basis function is
    integrated once for the unit peakon and rescaled: the value at (a, c) is
    a c P + a (K + Y) + a^2 (N1 + N2). R(a, c) is the largest ratio of
    |residual| to its error estimate over the basis. For every amplitude the
    speed minimizing the summed squared residuals is reported as well, and an
    affine law c(a) is fitted to the optimal speeds with R below threshold.
    """
    a_values = [float(a) for a in a_grid]
    c_values = [float(c) for c in c_grid]
    basis = [as_test_function(psi) for psi in (psi_basis or default_basis(theta))]
    unit = PeakonField(PeakonParams(a=1.0, theta=theta, c=0.0))
    p = ChkpNormalized(kappa=kappa)
    logger.info(f"Peakon scan theta={theta}, kappa={kappa}: {len(basis)} test functions, "
                f"{len(a_values)}x{len(c_values)} grid")

    results = []
    for i, psi in enumerate(basis):
        results.append(integrate(_steady_terms(unit, _spatial(psi), p), psi.box(), _ridge_for(unit, True), config))
        logger.debug(f"basis function {i + 1}/{len(basis)} integrated in {results[-1].levels} levels")

    def coefficients(a: float, c: float) -> List[float]:
        return [a * c, a, a, a * a, a * a]

    def ratio(a: float, c: float) -> float:
        w = coefficients(a, c)
        return max(_ratio(r.value(w), r.estimate(w)) for r in results)

    table = []
    best = []
    for a in a_values:
        for c in c_values:
            table.append(ZeroSetPoint(a=a, c=c, ratio=0.0 if a == 0 else ratio(a, c)))
        if a == 0:
            continue
        transport = np.array([a * r.values[0] for r in results])
        rest = np.array([a * (r.values[1] + r.values[2]) + a * a * (r.values[3] + r.values[4]) for r in results])
        denominator = float(transport @ transport)
        if denominator == 0:
            continue
        c_star = -float(transport @ rest) / denominator
        best.append(ZeroSetPoint(a=a, c=c_star, ratio=ratio(a, c_star)))

    members = [point for point in best if point.ratio < threshold]
    slope = intercept = fit_residual = None
    if len(members) >= 2:
        a_fit = np.array([m.a for m in members])
        c_fit = np.array([m.c for m in members])
        slope, intercept = (float(v) for v in np.polyfit(a_fit, c_fit, 1))
        fit_residual = float(np.max(np.abs(slope * a_fit + intercept - c_fit)))
        logger.info(f"Fitted zero curve c = {slope:.10g} a + {intercept:.10g} (max deviation {fit_residual:.2e})")
    else:
        logger.info(f"Zero set has {len(members)} optimal points below R={threshold}; no curve fitted")

    return ZeroSet(theta=theta, kappa=kappa, threshold=threshold, table=table, best=best,
                   slope=slope, intercept=intercept, fit_residual=fit_residual)
