"""Result and report models."""

import math
from dataclasses import dataclass
from typing import List, Literal, Optional, Tuple

from pydantic import Field, model_validator

from .base import BaseSymwaveModel
from .grid import Field2D
from .params import AnalysisThresholds, ModelParams


class SymmetryReport(BaseSymwaveModel):
    """Axis of symmetry and asymmetry score over a snapshot series."""

    lambda_of_t: List[Tuple[float, float]]
    asymmetry_of_t: List[Tuple[float, float]]
    lambda_dot_estimate: float
    lambda_curvature: float = 0.0
    norm: Literal["relative-L2"] = "relative-L2"
    thresholds: AnalysisThresholds = AnalysisThresholds()

    @model_validator(mode="after")
    def validate_scores(self) -> "SymmetryReport":
        if any(score < 0 for _, score in self.asymmetry_of_t):
            raise ValueError("asymmetry scores must be nonnegative")
        return self

    @property
    def max_asymmetry(self) -> float:
        return max((s for _, s in self.asymmetry_of_t), default=0.0)

    @property
    def symmetric(self) -> bool:
        return self.max_asymmetry < self.thresholds.symmetric


class SteadinessReport(BaseSymwaveModel):
    """Steadiness in the x-direction of a snapshot series."""

    speed_estimate: float
    shape_error_of_t: List[Tuple[float, float]]
    verdict: Literal["steady", "not-steady", "inconclusive"]
    thresholds: AnalysisThresholds = AnalysisThresholds()

    @property
    def max_shape_error(self) -> float:
        return max((e for _, e in self.shape_error_of_t), default=0.0)


class WeakResidual(BaseSymwaveModel):
    """Value of a weak-form integral with its quadrature error estimate."""

    value: float
    quadrature_error_estimate: float = Field(..., ge=0)
    levels: int = 0

    @property
    def is_zero(self) -> bool:
        """True when the value cannot be distinguished from quadrature error."""
        return abs(self.value) <= self.quadrature_error_estimate

    def __str__(self) -> str:
        return f"{self.value:.6e} ± {self.quadrature_error_estimate:.1e}"


class ZeroSetPoint(BaseSymwaveModel):
    a: float
    c: float
    ratio: float


class ZeroSet(BaseSymwaveModel):
    """
    Peakon parameters whose steady weak residual vanishes.

    ``table`` holds every scanned (a, c) pair with its ratio R; ``best`` holds,
    per amplitude, the least-squares optimal speed and its ratio.
    """

    theta: float
    kappa: float
    threshold: float = 3.0
    table: List[ZeroSetPoint]
    best: List[ZeroSetPoint]
    slope: Optional[float] = None
    intercept: Optional[float] = None
    fit_residual: Optional[float] = None

    @property
    def members(self) -> List[ZeroSetPoint]:
        return [p for p in self.table if p.ratio < self.threshold]


class BranchPoint(BaseSymwaveModel):
    amplitude: float
    speed: float
    residual_norm: float


class DiagnosticsRow(BaseSymwaveModel):
    """
    One row of the diagnostics CSV.

    The analysis columns are None when they were not computed (analysis
    disabled, zero field, or no elapsed time for a speed).
    """

    t: float
    l2_norm: float
    h1_seminorm: float
    max_abs: float
    xmean_drift: float
    asymmetry_score: Optional[float] = None
    axis_lambda: Optional[float] = None
    speed_estimate: Optional[float] = None
    shape_error: Optional[float] = None
    blowup: bool = False

    @property
    def finite(self) -> bool:
        return all(
            math.isfinite(v)
            for v in (self.l2_norm, self.h1_seminorm, self.max_abs, self.xmean_drift)
        )


class DiagnosticsSeries(BaseSymwaveModel):
    rows: List[DiagnosticsRow] = []

    @model_validator(mode="after")
    def validate_order(self) -> "DiagnosticsSeries":
        times = [r.t for r in self.rows]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("diagnostics times must be strictly increasing")
        if any(r.blowup for r in self.rows[:-1]):
            raise ValueError("only the last diagnostics row may be flagged as blow-up")
        return self

    def appended(self, row: DiagnosticsRow) -> "DiagnosticsSeries":
        return DiagnosticsSeries(rows=[*self.rows, row])


@dataclass(frozen=True, eq=False)
class TravelingWave:
    """A converged traveling-wave profile g(x - c t, y)."""

    profile: Field2D
    speed: float
    model: ModelParams
    residual_norm: float
    amplitude: float

    def branch_point(self) -> BranchPoint:
        return BranchPoint(amplitude=self.amplitude, speed=self.speed, residual_norm=self.residual_norm)
