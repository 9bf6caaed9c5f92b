"""Tests for model parameters and experiment schemas."""

import logging

import pytest
from pydantic import TypeAdapter, ValidationError

from symwave.errors import ConfigError
from symwave.models import (
    BumpSpec,
    BumpSpec2D,
    ChkpNormalized,
    ChkpPhysical,
    DiagnosticsRow,
    DiagnosticsSeries,
    HcpParams,
    ModelParams,
    PeakonParams,
    SymmetryReport,
    WeakResidual,
)
from symwave.models.config import (
    ManufacturedFieldSpec,
    ModeInitial,
    PeakonScanConfig,
    RunConfig,
    WeakResidualConfig,
    ZeroFieldSpec,
)

RUN = {
    "schema_version": 1,
    "model": {"tag": "HCP", "alpha": 1.0, "beta": 0.1, "gamma": 1.0},
    "grid": {"nx": 16, "ny": 8, "lx": 6.0, "ly": 6.0},
    "t_end": 1.0,
    "dt": 0.1,
    "initial": {"generator": "mode", "amplitude": 0.01, "jx": 1},
}


class TestModelParams:
    """Tests for the tagged model union."""

    @pytest.mark.parametrize("data,expected", [
        ({"tag": "CHKP_NORMALIZED", "kappa": -1.0}, ChkpNormalized),
        ({"tag": "HCP", "alpha": 1.0}, HcpParams),
        ({"tag": "CHKP_PHYSICAL", "epsilon": 0.1, "gamma_phys": 0.2}, ChkpPhysical),
    ])
    def test_discriminator(self, data, expected):
        assert isinstance(TypeAdapter(ModelParams).validate_python(data), expected)

    def test_unknown_tag(self):
        with pytest.raises(ValidationError):
            TypeAdapter(ModelParams).validate_python({"tag": "KDV"})

    def test_hcp_parameters_are_nonnegative(self):
        with pytest.raises(ValidationError):
            HcpParams(alpha=-1.0)

    def test_large_physical_parameters_warn(self, caplog):
        with caplog.at_level(logging.WARNING, logger="symwave"):
            ChkpPhysical(epsilon=2.0, gamma_phys=0.5)

        assert "epsilon=2.0" in caplog.text

    def test_peakon_amplitude_nonzero(self):
        with pytest.raises(ValidationError):
            PeakonParams(a=0.0)

    def test_bump_radii_positive(self):
        with pytest.raises(ValidationError):
            BumpSpec(center=(0, 0, 0), radii=(1.0, 0.0, 1.0))
        with pytest.raises(ValidationError):
            BumpSpec2D(center=(0, 0), radii=(-1.0, 1.0))


class TestRunConfig:
    """Tests for experiment schemas."""

    def test_valid(self):
        cfg = RunConfig.from_payload(RUN)

        assert isinstance(cfg.initial, ModeInitial)
        assert cfg.snapshot_every == 1
        assert cfg.thresholds.steady == 1e-5

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as exc_info:
            RunConfig.from_payload({**RUN, "dtt": 0.1})

        assert exc_info.value.key_path == "dtt"

    def test_nested_key_path(self):
        with pytest.raises(ConfigError) as exc_info:
            RunConfig.from_payload({**RUN, "grid": {**RUN["grid"], "nx": 15}})

        assert exc_info.value.key_path == "grid.nx"
        assert str(exc_info.value).startswith("grid.nx: ")

    def test_negative_time_step(self):
        with pytest.raises(ConfigError) as exc_info:
            RunConfig.from_payload({**RUN, "dt": -0.1})

        assert exc_info.value.key_path == "dt"


class TestWeakConfigs:
    def test_dimension_must_match_form(self):
        with pytest.raises(ValidationError):
            WeakResidualConfig(form="chkp_steady", field=ZeroFieldSpec(),
                               test_function=BumpSpec(center=(0, 0, 0), radii=(1, 1, 1)))
        with pytest.raises(ValidationError):
            WeakResidualConfig(form="hcp", field=ZeroFieldSpec(),
                               test_function=BumpSpec2D(center=(0, 0), radii=(1, 1)))

    def test_field_discriminator(self):
        cfg = WeakResidualConfig.model_validate({
            "form": "chkp",
            "field": {"kind": "manufactured", "velocity": 0.2},
            "test_function": {"center": [0, 0, 0], "radii": [1, 1, 1]},
        })

        assert cfg.field == ManufacturedFieldSpec(velocity=0.2)
        assert isinstance(cfg.test_function, BumpSpec)

    def test_scan_needs_grids(self):
        with pytest.raises(ValidationError):
            PeakonScanConfig(a_grid=[], c_grid=[1.0])


class TestReports:
    """Tests for report models."""

    def test_diagnostics_must_increase(self):
        row = DiagnosticsRow(t=1.0, l2_norm=1.0, h1_seminorm=1.0, max_abs=1.0, xmean_drift=0.0)

        with pytest.raises(ValidationError):
            DiagnosticsSeries(rows=[row, row])

    def test_only_last_row_flags_blowup(self):
        first = DiagnosticsRow(t=0.0, l2_norm=1.0, h1_seminorm=1.0, max_abs=1.0, xmean_drift=0.0, blowup=True)
        second = DiagnosticsRow(t=1.0, l2_norm=1.0, h1_seminorm=1.0, max_abs=1.0, xmean_drift=0.0)

        with pytest.raises(ValidationError):
            DiagnosticsSeries(rows=[first, second])
        assert DiagnosticsSeries(rows=[second]).appended(
            DiagnosticsRow(t=2.0, l2_norm=float("nan"), h1_seminorm=0.0, max_abs=0.0, xmean_drift=0.0,
                           blowup=True)
        ).rows[-1].blowup

    def test_symmetry_verdict(self):
        report = SymmetryReport(lambda_of_t=[(0.0, 1.0), (1.0, 1.5)],
                                asymmetry_of_t=[(0.0, 1e-9), (1.0, 2e-7)], lambda_dot_estimate=0.5)

        assert report.max_asymmetry == 2e-7
        assert report.symmetric

    def test_negative_asymmetry_rejected(self):
        with pytest.raises(ValidationError):
            SymmetryReport(lambda_of_t=[(0.0, 0.0)], asymmetry_of_t=[(0.0, -1.0)], lambda_dot_estimate=0.0)

    def test_weak_residual_is_zero(self):
        assert WeakResidual(value=1e-12, quadrature_error_estimate=1e-11).is_zero
        assert not WeakResidual(value=1e-3, quadrature_error_estimate=1e-11).is_zero
        with pytest.raises(ValidationError):
            WeakResidual(value=0.0, quadrature_error_estimate=-1.0)
