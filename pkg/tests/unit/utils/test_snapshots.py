"""Tests for snapshot files and result tables."""

import json

import numpy as np
import pytest

from symwave.errors import ConfigError, SnapshotFormatError
from symwave.models import (
    BranchPoint,
    DiagnosticsRow,
    DiagnosticsSeries,
    Field2D,
    HcpParams,
    Snapshot,
    ZeroSet,
    ZeroSetPoint,
)
from symwave.utils.snapshots import (
    clear_series,
    read_branch,
    read_diagnostics,
    read_series,
    read_snapshot,
    write_branch,
    write_diagnostics,
    write_series,
    write_snapshot,
    write_zero_set,
)

MODEL = HcpParams(alpha=1.0, beta=0.1, gamma=1.0)


@pytest.fixture
def random_snapshot(grid, rng):
    return Snapshot(0.3, Field2D(grid, rng.standard_normal(grid.shape)))


class TestSnapshotFiles:
    """Tests for the sidecar and payload format."""

    def test_round_trip_is_bit_exact(self, tmp_path, random_snapshot):
        write_snapshot(tmp_path, 7, random_snapshot, MODEL)

        snapshot, header = read_snapshot(tmp_path / "snapshot_00007.json")
        assert snapshot.t == 0.3
        assert np.array_equal(snapshot.field.values, random_snapshot.field.values)
        assert header.model == MODEL
        assert header.grid == random_snapshot.field.grid

    def test_payload_layout(self, tmp_path, grid):
        x, _ = grid.mesh()
        write_snapshot(tmp_path, 0, Snapshot(0.0, Field2D(grid, x)), MODEL)

        raw = np.frombuffer((tmp_path / "snapshot_00000.bin").read_bytes(), dtype="<f8")
        assert raw.size == grid.nx * grid.ny
        # x runs fastest
        assert raw[1] == pytest.approx(grid.dx)
        assert raw[grid.nx] == 0.0

    def test_sidecar_contents(self, tmp_path, random_snapshot):
        path = write_snapshot(tmp_path, 1, random_snapshot, MODEL)
        header = json.loads(path.read_text())

        assert header["schema_version"] == 1
        assert header["byte_order"] == "little"
        assert header["payload"] == "snapshot_00001.bin"
        assert header["model"]["tag"] == "HCP"
        assert not list(tmp_path.glob("*.tmp"))

    def test_truncated_payload(self, tmp_path, random_snapshot):
        write_snapshot(tmp_path, 0, random_snapshot, MODEL)
        payload = tmp_path / "snapshot_00000.bin"
        payload.write_bytes(payload.read_bytes()[:-8])

        with pytest.raises(SnapshotFormatError, match="expected"):
            read_snapshot(tmp_path / "snapshot_00000.json")

    def test_missing_payload(self, tmp_path, random_snapshot):
        write_snapshot(tmp_path, 0, random_snapshot, MODEL)
        (tmp_path / "snapshot_00000.bin").unlink()

        with pytest.raises(SnapshotFormatError):
            read_snapshot(tmp_path / "snapshot_00000.json")

    def test_malformed_header_is_a_config_error(self, tmp_path):
        (tmp_path / "snapshot_00000.json").write_text('{"schema_version": 1, "nx": 8}')

        with pytest.raises(ConfigError):
            read_snapshot(tmp_path / "snapshot_00000.json")

    def test_series_order(self, tmp_path, grid):
        snapshots = [Snapshot(float(t), Field2D(grid, np.full(grid.shape, t))) for t in range(12)]
        write_series(tmp_path, snapshots, MODEL)

        series, headers = read_series(tmp_path)
        assert [s.t for s in series] == list(map(float, range(12)))
        assert len(headers) == 12

    def test_empty_directory(self, tmp_path):
        with pytest.raises(SnapshotFormatError):
            read_series(tmp_path)

    def test_rewritten_series_drops_stale_snapshots(self, tmp_path, grid):
        longer = [Snapshot(float(t), Field2D(grid, np.full(grid.shape, t))) for t in range(5)]
        write_series(tmp_path, longer, MODEL)
        (tmp_path / "snapshot_00009.json.tmp").write_text("partial")
        (tmp_path / "diagnostics.csv").write_text("kept")

        write_series(tmp_path, longer[:1], MODEL)

        series, _ = read_series(tmp_path)
        assert [s.t for s in series] == [0.0]
        assert sorted(p.name for p in tmp_path.iterdir()) == [
            "diagnostics.csv", "snapshot_00000.bin", "snapshot_00000.json",
        ]

    def test_clear_missing_directory(self, tmp_path):
        assert clear_series(tmp_path / "absent") == 0


class TestTables:
    """Tests for CSV tables."""

    def test_diagnostics(self, tmp_path):
        rows = [
            DiagnosticsRow(t=0.0, l2_norm=1 / 3, h1_seminorm=2.0, max_abs=0.5, xmean_drift=0.0),
            DiagnosticsRow(t=0.1, l2_norm=0.1, h1_seminorm=2.0, max_abs=0.5, xmean_drift=1e-17, blowup=True),
        ]
        path = write_diagnostics(tmp_path / "diagnostics.csv", DiagnosticsSeries(rows=rows))

        text = path.read_text()
        assert text.splitlines()[0].startswith("t,l2_norm,h1_seminorm")
        assert "\r" not in text
        assert text.splitlines()[2].endswith(",1")
        assert read_diagnostics(path) == DiagnosticsSeries(rows=rows)

    def test_skipped_analysis_is_written_as_nan(self, tmp_path):
        rows = [
            DiagnosticsRow(t=0.0, l2_norm=1.0, h1_seminorm=2.0, max_abs=0.5, xmean_drift=0.0,
                           asymmetry_score=0.0, axis_lambda=1.5),
            DiagnosticsRow(t=0.5, l2_norm=1.0, h1_seminorm=2.0, max_abs=0.5, xmean_drift=0.0,
                           asymmetry_score=1e-3, axis_lambda=1.75, speed_estimate=0.5, shape_error=0.0),
        ]
        path = write_diagnostics(tmp_path / "diagnostics.csv", DiagnosticsSeries(rows=rows))

        lines = path.read_text().splitlines()
        assert lines[1] == "0,1,2,0.5,0,0,1.5,nan,nan,0"
        assert lines[2].endswith(",0.5,0,0")
        restored = read_diagnostics(path).rows
        assert restored[0].speed_estimate is None
        assert restored[0].shape_error is None
        assert restored[0].asymmetry_score == 0.0
        assert restored[1].shape_error == 0.0
        assert restored == rows

    def test_wrong_columns(self, tmp_path):
        (tmp_path / "branch.csv").write_text("a,b\n1,2\n")

        with pytest.raises(SnapshotFormatError):
            read_branch(tmp_path / "branch.csv")

    def test_branch(self, tmp_path):
        points = [BranchPoint(amplitude=0.1, speed=0.5000000000000001, residual_norm=1e-12)]
        path = write_branch(tmp_path / "branch.csv", points)

        assert path.read_text().splitlines() == ["A,c,residual_norm", "0.10000000000000001,0.50000000000000011,9.9999999999999998e-13"]
        assert read_branch(path) == points

    def test_zero_set(self, tmp_path):
        table = [ZeroSetPoint(a=1.0, c=1.0, ratio=0.5), ZeroSetPoint(a=1.0, c=2.0, ratio=40.0)]
        zero_set = ZeroSet(theta=0.0, kappa=0.0, table=table, best=[table[0]])

        csv_path, fit_path = write_zero_set(tmp_path, zero_set)
        assert csv_path.read_text().splitlines()[0] == "a,c,R"
        fit = json.loads(fit_path.read_text())
        assert "table" not in fit
        assert fit["best"] == [{"a": 1.0, "c": 1.0, "ratio": 0.5}]
        assert fit["slope"] is None
