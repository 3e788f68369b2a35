"""Tests for table emission."""
import pandas as pd
import pytest

from neumann_elasticity.domain.entities.study import (
    ConvergenceRow,
    ConvergenceTable,
    EigenBoundsRow,
    EigenBoundsTable,
    ExperimentConfig,
)
from neumann_elasticity.infra.common import OutputError
from neumann_elasticity.infra.table_io import TableIO

HEADER = "level,ndof,h1_error,rate,iters,orth_L2,orth_l2,wall_ms"


@pytest.fixture
def table():
    config = ExperimentConfig(name="lagrange-test", formulation={"formulation": "lagrange", "precond": "bm"})
    rows = [
        ConvergenceRow(level=1, ndof=81, h1_error=0.02, iters=12, orth_L2=1e-13, orth_l2=0.3, wall_ms=1.5),
        ConvergenceRow(level=2, ndof=375, h1_error=0.01, rate=1.0, iters=13, orth_L2=2e-13, orth_l2=0.2, wall_ms=4.0),
    ]
    return ConvergenceTable(rows=rows, config=config, version="0.1.0")


def test_empty_table_writes_header_only(tmp_path):
    """Test an empty table produces exactly the header line."""
    path = TableIO().emit(ConvergenceTable(), "csv", tmp_path / "empty.csv")
    assert path.read_text().strip() == HEADER


def test_csv_columns_and_missing_values(table, tmp_path):
    """Test column order, float formatting and empty cells for missing rates."""
    path = TableIO().emit(table, "csv", tmp_path / "t.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == HEADER
    assert lines[1].split(",")[3] == ""
    assert "2.000000e-02" in lines[1]
    frame = TableIO().read_frame(path)
    assert list(frame["iters"]) == [12, 13]
    assert pd.isna(frame["rate"][0])


def test_csv_is_deterministic(table, tmp_path):
    """Test writing the same table twice gives identical bytes."""
    io = TableIO()
    first = io.emit(table, "csv", tmp_path / "a.csv").read_bytes()
    second = io.emit(table, "csv", tmp_path / "b.csv").read_bytes()
    assert first == second


def test_json_echoes_config(table, tmp_path):
    """Test JSON keeps rows, the config and the version."""
    io = TableIO()
    path = io.emit(table, "json", tmp_path / "nested" / "t.json")
    loaded = io.read_json(path)
    assert loaded == table
    assert loaded.config.formulation.precond == "bm"


def test_parquet(table, tmp_path):
    """Test Parquet output reads back with the same columns."""
    io = TableIO()
    frame = io.read_frame(io.emit(table, "parquet", tmp_path / "t.parquet"))
    assert list(frame.columns) == list(ConvergenceTable.COLUMNS)
    assert frame["ndof"].tolist() == [81, 375]


def test_eigen_bounds_columns(tmp_path):
    """Test the spectral table has its own columns."""
    row = EigenBoundsRow(level=0, ndof=87, neg_min=-1.0, neg_max=-1.0, pos_min=1.0, pos_max=1.0, kappa=1.0)
    path = TableIO().emit(EigenBoundsTable(rows=[row]), "csv", tmp_path / "e.csv")
    assert path.read_text().splitlines()[0] == "level,ndof,neg_min,neg_max,pos_min,pos_max,kappa"


def test_unwritable_path(table, tmp_path):
    """Test I/O failures raise OutputError carrying the path."""
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    target = blocker / "t.csv"
    with pytest.raises(OutputError) as exc_info:
        TableIO().emit(table, "csv", target)
    assert exc_info.value.path == str(target)


def test_unknown_format(table, tmp_path):
    """Test unknown formats are rejected."""
    with pytest.raises(OutputError, match="Unknown table format"):
        TableIO().emit(table, "xlsx", tmp_path / "t.xlsx")
