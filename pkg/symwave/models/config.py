"""Experiment configuration schemas.

Every experiment file is a JSON document carrying ``schema_version``; unknown
keys are rejected by the base model.
"""

from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import Field, model_validator

from .base import BaseSymwaveModel
from .grid import Grid2D
from .params import AnalysisThresholds, BumpSpec, BumpSpec2D, ModelParams, PeakonParams

SCHEMA_VERSION = 1


class GaussianInitial(BaseSymwaveModel):
    """Gaussian bump, x-symmetric about center[0], projected to zero x-mean."""

    generator: Literal["gaussian"] = "gaussian"
    amplitude: float = 0.5
    center: Tuple[float, float] = (0.0, 0.0)
    width: Tuple[float, float] = (1.0, 1.0)


class ModeInitial(BaseSymwaveModel):
    """Single Fourier mode amplitude*cos(xi_j x + eta_k y + phase)."""

    generator: Literal["mode"] = "mode"
    amplitude: float = 1e-8
    jx: int = Field(1, ge=1)
    ky: int = 0
    phase: float = 0.0


class RandomInitial(BaseSymwaveModel):
    """Seeded random band-limited admissible field."""

    generator: Literal["random"] = "random"
    amplitude: float = 0.1
    max_mode: int = Field(4, ge=1)


class SnapshotInitial(BaseSymwaveModel):
    """Initial data read from a snapshot sidecar file."""

    generator: Literal["snapshot"] = "snapshot"
    path: str


InitialSpec = Annotated[
    Union[GaussianInitial, ModeInitial, RandomInitial, SnapshotInitial],
    Field(discriminator="generator"),
]


class RunConfig(BaseSymwaveModel):
    """Configuration of a time-evolution run."""

    schema_version: Literal[1] = SCHEMA_VERSION
    model: ModelParams
    grid: Grid2D
    t_end: float = Field(..., ge=0)
    dt: float = Field(..., gt=0)
    snapshot_every: int = Field(1, ge=1)
    initial: InitialSpec
    seed: int = 0
    analysis: bool = True
    thresholds: AnalysisThresholds = AnalysisThresholds()

    @model_validator(mode="after")
    def validate_times(self) -> "RunConfig":
        if 0 < self.t_end < self.dt:
            raise ValueError("t_end must be at least dt")
        return self


class ContinuationConfig(BaseSymwaveModel):
    d_amplitude: float = 0.0
    steps: int = Field(0, ge=0)


class TwSolveConfig(BaseSymwaveModel):
    """Configuration of a traveling-wave solve and optional continuation."""

    schema_version: Literal[1] = SCHEMA_VERSION
    model: ModelParams
    grid: Grid2D
    amplitude: float
    mode: Tuple[int, int] = (1, 0)
    c0: Optional[float] = None
    tol: float = Field(1e-10, gt=0)
    max_iter: int = Field(30, ge=1)
    continuation: ContinuationConfig = ContinuationConfig()


class ZeroFieldSpec(BaseSymwaveModel):
    kind: Literal["zero"] = "zero"


class PeakonFieldSpec(BaseSymwaveModel):
    kind: Literal["peakon"] = "peakon"
    peakon: PeakonParams


class ManufacturedFieldSpec(BaseSymwaveModel):
    """Smooth Gaussian-type field a*G(x - x0 - v t) G(y - y0) (1 + b t)."""

    kind: Literal["manufactured"] = "manufactured"
    amplitude: float = 0.3
    center: Tuple[float, float] = (0.0, 0.0)
    widths: Tuple[float, float] = (1.0, 1.5)
    velocity: float = 0.5
    growth: float = 0.1


class ProfileFieldSpec(BaseSymwaveModel):
    """A sampled profile (for example a traveling wave) interpolated spectrally."""

    kind: Literal["profile"] = "profile"
    path: str
    speed: float = 0.0


FieldSpec = Annotated[
    Union[ZeroFieldSpec, PeakonFieldSpec, ManufacturedFieldSpec, ProfileFieldSpec],
    Field(discriminator="kind"),
]


class QuadratureConfig(BaseSymwaveModel):
    nodes: int = Field(8, ge=2)
    initial_cells: int = Field(2, ge=1)
    max_levels: int = Field(4, ge=1)
    tol: float = Field(1e-10, gt=0)


class WeakResidualConfig(BaseSymwaveModel):
    """Configuration of a single weak-residual evaluation."""

    schema_version: Literal[1] = SCHEMA_VERSION
    form: Literal["chkp", "chkp_steady", "hcp", "hcp_steady"]
    field: FieldSpec
    test_function: Union[BumpSpec, BumpSpec2D]
    kappa: float = 0.0
    alpha: float = Field(0.0, ge=0)
    beta: float = Field(0.0, ge=0)
    gamma: float = Field(0.0, ge=0)
    c: float = 0.0
    quadrature: QuadratureConfig = QuadratureConfig()

    @model_validator(mode="after")
    def validate_dimension(self) -> "WeakResidualConfig":
        steady = self.form.endswith("_steady")
        if steady and not isinstance(self.test_function, BumpSpec2D):
            raise ValueError("steady forms need a spatial (2D) test function")
        if not steady and not isinstance(self.test_function, BumpSpec):
            raise ValueError("time-dependent forms need a space-time (3D) test function")
        return self


class BasisConfig(BaseSymwaveModel):
    """Deterministic lattice of test bumps at three scales."""

    scales: Tuple[float, float, float] = (0.6, 1.0, 1.6)
    span: float = Field(3.0, gt=0)
    count: int = Field(10, ge=10)


class PeakonScanConfig(BaseSymwaveModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    theta: float = 0.0
    kappa: float = 0.0
    a_grid: List[float] = Field(..., min_length=1)
    c_grid: List[float] = Field(..., min_length=1)
    basis: Optional[List[BumpSpec2D]] = None
    basis_lattice: BasisConfig = BasisConfig()
    threshold: float = Field(3.0, gt=0)
    quadrature: QuadratureConfig = QuadratureConfig(max_levels=5)


class TransformConfig(BaseSymwaveModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    epsilon: float = Field(..., gt=0)
    gamma_phys: float = Field(..., gt=0)
    kappa: float = 0.0
    direction: Literal["to_physical", "to_normalized"] = "to_physical"
