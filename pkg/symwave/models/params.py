"""Model, peakon and test-function parameters."""

import logging
from typing import Annotated, Literal, Tuple, Union

from pydantic import Field, model_validator

from .base import BaseSymwaveModel

logger = logging.getLogger(__name__)


class ChkpNormalized(BaseSymwaveModel):
    """CH-KP equation in normalized form, L u_t + kappa u_xx + ... + u_yy = 0."""

    tag: Literal["CHKP_NORMALIZED"] = "CHKP_NORMALIZED"
    kappa: float = 0.0


class HcpParams(BaseSymwaveModel):
    """Hyperelastic compressible plate model with material parameters alpha, beta, gamma."""

    tag: Literal["HCP"] = "HCP"
    alpha: float = Field(0.0, ge=0)
    beta: float = Field(0.0, ge=0)
    gamma: float = Field(0.0, ge=0)


class ChkpPhysical(BaseSymwaveModel):
    """CH-KP equation in physical variables with small parameters epsilon and gamma."""

    tag: Literal["CHKP_PHYSICAL"] = "CHKP_PHYSICAL"
    epsilon: float = Field(..., gt=0)
    gamma_phys: float = Field(..., gt=0)

    @model_validator(mode="after")
    def warn_large_parameters(self) -> "ChkpPhysical":
        for name in ("epsilon", "gamma_phys"):
            value = getattr(self, name)
            if value > 1:
                logger.warning(f"{name}={value} is outside (0, 1]; the model assumes small parameters")
        return self


ModelParams = Annotated[
    Union[ChkpNormalized, HcpParams, ChkpPhysical],
    Field(discriminator="tag"),
]


class PeakonParams(BaseSymwaveModel):
    """
    Peaked traveling field a*exp(-|x + theta*y - c*t|).

    theta is the transverse slope of the ridge; it is named theta rather than
    beta so it cannot be confused with the plate parameter.
    """

    a: float
    theta: float = 0.0
    c: float = 0.0

    @model_validator(mode="after")
    def validate_amplitude(self) -> "PeakonParams":
        if self.a == 0:
            raise ValueError("peakon amplitude must be nonzero")
        return self


class BumpSpec(BaseSymwaveModel):
    """Space-time test function amplitude * B((t-t0)/rt) B((x-x0)/rx) B((y-y0)/ry)."""

    center: Tuple[float, float, float]
    radii: Tuple[float, float, float]
    amplitude: float = 1.0

    @model_validator(mode="after")
    def validate_radii(self) -> "BumpSpec":
        if min(self.radii) <= 0:
            raise ValueError("bump radii must be positive")
        return self


class BumpSpec2D(BaseSymwaveModel):
    """Spatial test function amplitude * B((x-x0)/rx) B((y-y0)/ry)."""

    center: Tuple[float, float]
    radii: Tuple[float, float]
    amplitude: float = 1.0

    @model_validator(mode="after")
    def validate_radii(self) -> "BumpSpec2D":
        if min(self.radii) <= 0:
            raise ValueError("bump radii must be positive")
        return self


class AnalysisThresholds(BaseSymwaveModel):
    """Verdict thresholds recorded alongside every report."""

    symmetric: float = Field(1e-6, gt=0)
    steady: float = Field(1e-5, gt=0)
    not_steady_factor: float = Field(10.0, ge=1)
