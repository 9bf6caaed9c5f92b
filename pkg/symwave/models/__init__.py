"""Domain models for symwave."""

from .base import BaseSymwaveModel, error_key_path
from .grid import Field2D, Grid2D, SampledField, Snapshot, SpectralField2D
from .params import (
    AnalysisThresholds,
    BumpSpec,
    BumpSpec2D,
    ChkpNormalized,
    ChkpPhysical,
    HcpParams,
    ModelParams,
    PeakonParams,
)
from .reports import (
    BranchPoint,
    DiagnosticsRow,
    DiagnosticsSeries,
    SteadinessReport,
    SymmetryReport,
    TravelingWave,
    WeakResidual,
    ZeroSet,
    ZeroSetPoint,
)

__all__ = [
    "BaseSymwaveModel",
    "error_key_path",
    "Field2D",
    "Grid2D",
    "SampledField",
    "Snapshot",
    "SpectralField2D",
    "AnalysisThresholds",
    "BumpSpec",
    "BumpSpec2D",
    "ChkpNormalized",
    "ChkpPhysical",
    "HcpParams",
    "ModelParams",
    "PeakonParams",
    "BranchPoint",
    "DiagnosticsRow",
    "DiagnosticsSeries",
    "SteadinessReport",
    "SymmetryReport",
    "TravelingWave",
    "WeakResidual",
    "ZeroSet",
    "ZeroSetPoint",
]
