"""Tests for legacy VTK export."""
import numpy as np
import pytest

from neumann_elasticity.domain.services.function_space import FunctionSpace, interpolate
from neumann_elasticity.domain.services.mesh_service import build_box_mesh
from neumann_elasticity.infra.common import DimensionError
from neumann_elasticity.infra.vtk_writer import export_field, write_vtk


@pytest.fixture
def mesh():
    return build_box_mesh(((0.0, 1.0),) * 3, (1, 1, 2))


def _sections(text):
    lines = text.splitlines()
    return {line.split()[0]: (i, line) for i, line in enumerate(lines) if line and line[0].isalpha()}, lines


def test_vector_field(mesh, tmp_path):
    """Test header counts and one vector per vertex for a P2 field."""
    field = interpolate(FunctionSpace(mesh, "P2-vector3"), lambda x: x)
    path = export_field(tmp_path / "u.vtk", field)
    sections, lines = _sections(path.read_text())
    assert lines[0] == "# vtk DataFile Version 3.0"
    assert sections["POINTS"][1] == f"POINTS {mesh.n_vertices} double"
    assert sections["CELLS"][1] == f"CELLS {mesh.n_cells} {5 * mesh.n_cells}"
    assert sections["CELL_TYPES"][1] == f"CELL_TYPES {mesh.n_cells}"
    start = sections["VECTORS"][0] + 1
    values = np.loadtxt(lines[start:start + mesh.n_vertices])
    assert np.allclose(values, mesh.vertices)
    assert len(lines) == start + mesh.n_vertices


def test_scalar_field(mesh, tmp_path):
    """Test scalar point data gets a lookup table."""
    field = interpolate(FunctionSpace(mesh, "P1-scalar"), lambda x: x[:, 0])
    text = export_field(tmp_path / "phi.vtk", field, "phi").read_text()
    assert "SCALARS phi double 1\nLOOKUP_TABLE default\n" in text


def test_point_data_shape_check(mesh, tmp_path):
    """Test point data must have one row per vertex."""
    with pytest.raises(DimensionError, match="Point data 'u'"):
        write_vtk(tmp_path / "bad.vtk", mesh, {"u": np.zeros((3, 3))})
