"""Numerical core of symwave."""

from .analysis import (
    asymmetry,
    estimate_shift,
    estimate_speed,
    find_axis,
    steadiness_report,
    symmetry_report,
)
from .equations import chkp_rhs, hcp_rhs, linear_symbol, rhs, strong_residual, tw_residual
from .spectral import (
    apply_L,
    deriv,
    evaluate,
    invert_L,
    reflect,
    set_workers,
    spectral_shift,
)
from .timestep import simulate, step
from .transform import ScaleMap, from_normalized, physical_residual, physical_speed, to_normalized
from .twsolve import continue_branch, linear_speed, seed_wave, solve_tw
from .weakform import (
    AffineAxis,
    lemma_lift,
    peakon_scan,
    reflect_test_function,
    steady_weak_residual_chkp,
    steady_weak_residual_hcp,
    symmetry_transfer_defect,
    weak_residual_chkp,
    weak_residual_hcp,
    weak_shape_residual,
)

__all__ = [
    "asymmetry",
    "estimate_shift",
    "estimate_speed",
    "find_axis",
    "steadiness_report",
    "symmetry_report",
    "chkp_rhs",
    "hcp_rhs",
    "linear_symbol",
    "rhs",
    "strong_residual",
    "tw_residual",
    "apply_L",
    "deriv",
    "evaluate",
    "invert_L",
    "reflect",
    "set_workers",
    "spectral_shift",
    "simulate",
    "step",
    "ScaleMap",
    "from_normalized",
    "physical_residual",
    "physical_speed",
    "to_normalized",
    "continue_branch",
    "linear_speed",
    "seed_wave",
    "solve_tw",
    "AffineAxis",
    "lemma_lift",
    "peakon_scan",
    "reflect_test_function",
    "steady_weak_residual_chkp",
    "steady_weak_residual_hcp",
    "symmetry_transfer_defect",
    "weak_residual_chkp",
    "weak_residual_hcp",
    "weak_shape_residual",
]
