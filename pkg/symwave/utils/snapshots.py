"""
On-disk formats: snapshot files, diagnostics and result tables.

A snapshot is a JSON sidecar ``snapshot_NNNNN.json`` describing a raw
little-endian float64 payload ``snapshot_NNNNN.bin`` of ny*nx values with x
fastest. CSV files use '.' decimals, '\\n' line endings and 17 significant
digits. Every file is written to a temporary name first and then renamed.
"""

import csv
import io
import logging
import math
import os
from pathlib import Path
from typing import Iterable, List, Literal, Sequence, Tuple, Union

import numpy as np

from ..errors import SnapshotFormatError
from ..models.base import BaseSymwaveModel
from ..models.config import SCHEMA_VERSION
from ..models.grid import Field2D, Grid2D, Snapshot
from ..models.params import ModelParams
from ..models.reports import BranchPoint, DiagnosticsRow, DiagnosticsSeries, TravelingWave, ZeroSet
from .serialization import deserialize_model, format_float, serialize_to_json

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]

SNAPSHOT_PATTERN = "snapshot_*.json"
DIAGNOSTICS_COLUMNS = [
    "t", "l2_norm", "h1_seminorm", "max_abs", "xmean_drift",
    "asymmetry_score", "axis_lambda", "speed_estimate", "shape_error", "blowup",
]
ANALYSIS_COLUMNS = {"asymmetry_score", "axis_lambda", "speed_estimate", "shape_error"}
BRANCH_COLUMNS = ["A", "c", "residual_norm"]
ZERO_SET_COLUMNS = ["a", "c", "R"]


class SnapshotHeader(BaseSymwaveModel):
    """JSON sidecar of a snapshot payload."""

    schema_version: Literal[1] = SCHEMA_VERSION
    model: ModelParams
    nx: int
    ny: int
    lx: float
    ly: float
    t: float
    byte_order: Literal["little"] = "little"
    dtype: Literal["float64"] = "float64"
    layout: Literal["x-fastest"] = "x-fastest"
    payload: str

    @property
    def grid(self) -> Grid2D:
        return Grid2D(nx=self.nx, ny=self.ny, lx=self.lx, ly=self.ly)


def atomic_write_bytes(path: PathLike, data: bytes) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = path.with_name(path.name + ".tmp")
    with open(temp_path, "wb") as f:
        f.write(data)
    os.replace(temp_path, path)
    return path


def atomic_write_text(path: PathLike, text: str) -> Path:
    return atomic_write_bytes(path, text.encode("utf-8"))


def snapshot_name(index: int) -> str:
    return f"snapshot_{index:05d}"


def write_snapshot(directory: PathLike, index: int, snapshot: Snapshot, model) -> Path:
    """
    Write one snapshot (payload first, then its sidecar).

    Returns:
        Path of the JSON sidecar
    """
    directory = Path(directory)
    grid = snapshot.field.grid
    name = snapshot_name(index)
    payload = snapshot.field.values.astype("<f8", copy=False).tobytes(order="C")
    atomic_write_bytes(directory / f"{name}.bin", payload)
    header = SnapshotHeader(model=model, nx=grid.nx, ny=grid.ny, lx=grid.lx, ly=grid.ly,
                            t=snapshot.t, payload=f"{name}.bin")
    return atomic_write_text(directory / f"{name}.json", serialize_to_json(header) + "\n")


def read_snapshot(path: PathLike) -> Tuple[Snapshot, SnapshotHeader]:
    """
    Read a snapshot sidecar and its payload.

    Raises:
        SnapshotFormatError: for a malformed header or a payload of the wrong length
    """
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise SnapshotFormatError(f"snapshot file not found: {path}")
    try:
        header = deserialize_model(text, SnapshotHeader)
    except SnapshotFormatError:
        raise
    except Exception as e:
        raise SnapshotFormatError(f"{path}: {e}")
    payload_path = path.parent / header.payload
    try:
        data = payload_path.read_bytes()
    except FileNotFoundError:
        raise SnapshotFormatError(f"payload not found: {payload_path}")
    expected = 8 * header.nx * header.ny
    if len(data) != expected:
        raise SnapshotFormatError(f"{payload_path}: payload has {len(data)} bytes, expected {expected}")
    values = np.frombuffer(data, dtype="<f8").reshape(header.ny, header.nx).astype(np.float64)
    return Snapshot(header.t, Field2D(header.grid, values)), header


def clear_series(directory: PathLike) -> int:
    """Remove the snapshot files of an earlier run; returns how many files were deleted."""
    removed = 0
    for path in Path(directory).glob("snapshot_*"):
        if path.is_file():
            path.unlink()
            removed += 1
    if removed:
        logger.info(f"Removed {removed} stale snapshot files from {directory}")
    return removed


def write_series(directory: PathLike, snapshots: Sequence[Snapshot], model) -> List[Path]:
    """Replace the snapshot series stored in a directory."""
    clear_series(directory)
    return [write_snapshot(directory, i, s, model) for i, s in enumerate(snapshots)]


def read_series(directory: PathLike) -> Tuple[List[Snapshot], List[SnapshotHeader]]:
    """
    Read every snapshot in a directory, ordered by file index.

    Raises:
        SnapshotFormatError: if the directory holds no snapshots
    """
    paths = sorted(Path(directory).glob(SNAPSHOT_PATTERN))
    if not paths:
        raise SnapshotFormatError(f"no snapshot files in {directory}")
    pairs = [read_snapshot(p) for p in paths]
    logger.debug(f"Read {len(pairs)} snapshots from {directory}")
    return [s for s, _ in pairs], [h for _, h in pairs]


def _csv_text(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def _csv_rows(path: PathLike, columns: Sequence[str]) -> List[dict]:
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != list(columns):
            raise SnapshotFormatError(f"{path}: expected columns {', '.join(columns)}")
        return list(reader)


def _optional_float(value) -> float:
    return math.nan if value is None else float(value)


def write_diagnostics(path: PathLike, series: DiagnosticsSeries) -> Path:
    """Analysis columns that were not computed are written as nan."""
    rows = (
        [*(_optional_float(getattr(r, c)) for c in DIAGNOSTICS_COLUMNS[:-1]), int(r.blowup)]
        for r in series.rows
    )
    return atomic_write_text(path, _csv_text(DIAGNOSTICS_COLUMNS, rows))


def read_diagnostics(path: PathLike) -> DiagnosticsSeries:
    rows = []
    for raw in _csv_rows(path, DIAGNOSTICS_COLUMNS):
        values = {c: float(raw[c]) for c in DIAGNOSTICS_COLUMNS[:-1]}
        values.update({c: None for c in ANALYSIS_COLUMNS if math.isnan(values[c])})
        rows.append(DiagnosticsRow(**values, blowup=bool(int(raw["blowup"]))))
    return DiagnosticsSeries(rows=rows)


def write_branch(path: PathLike, branch: Sequence[Union[TravelingWave, BranchPoint]]) -> Path:
    points = [b.branch_point() if isinstance(b, TravelingWave) else b for b in branch]
    rows = ([p.amplitude, p.speed, p.residual_norm] for p in points)
    return atomic_write_text(path, _csv_text(BRANCH_COLUMNS, rows))


def read_branch(path: PathLike) -> List[BranchPoint]:
    return [
        BranchPoint(amplitude=float(r["A"]), speed=float(r["c"]), residual_norm=float(r["residual_norm"]))
        for r in _csv_rows(path, BRANCH_COLUMNS)
    ]


def write_zero_set(directory: PathLike, zero_set: ZeroSet) -> Tuple[Path, Path]:
    """Write the scanned table as CSV and the optimal speeds with the fitted curve as JSON."""
    directory = Path(directory)
    rows = ([p.a, p.c, p.ratio] for p in zero_set.table)
    table = atomic_write_text(directory / "zero_set.csv", _csv_text(ZERO_SET_COLUMNS, rows))
    fit = zero_set.model_dump_report(exclude={"table"})
    curve = atomic_write_text(directory / "zero_set_fit.json", serialize_to_json(fit) + "\n")
    return table, curve


def write_report(path: PathLike, report: BaseSymwaveModel) -> Path:
    return atomic_write_text(path, serialize_to_json(report) + "\n")
