"""Legacy ASCII VTK export of tetrahedral meshes with point data."""
from pathlib import Path
from typing import Union

import numpy as np

from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.services.function_space import Field
from neumann_elasticity.infra.common import DimensionError, OutputError, get_logger

logger = get_logger(__name__)

VTK_TETRA = 10


def vertex_values(field: Field) -> np.ndarray:
    """Field values at the mesh vertices; P2 edge nodes are dropped."""
    return field.nodal_values()[: field.space.mesh.n_vertices]


def write_vtk(
    path: Union[str, Path],
    mesh: Mesh,
    point_data: dict[str, np.ndarray],
    title: str = "neumann-elasticity",
) -> Path:
    """
    Write an unstructured grid with per-vertex data.

    Arrays of shape (n,) or (n, 1) become SCALARS, (n, 3) become VECTORS.

    Raises:
        DimensionError: If an array does not have one row per vertex
        OutputError: On I/O failure
    """
    n = mesh.n_vertices
    for name, values in point_data.items():
        if values.shape[0] != n or values.ndim > 2 or (values.ndim == 2 and values.shape[1] not in (1, 3)):
            raise DimensionError(f"Point data '{name}' has shape {values.shape}, mesh has {n} vertices")

    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="ascii") as fh:
            fh.write("# vtk DataFile Version 3.0\n")
            fh.write(f"{title}\n")
            fh.write("ASCII\n")
            fh.write("DATASET UNSTRUCTURED_GRID\n")
            fh.write(f"POINTS {n} double\n")
            np.savetxt(fh, mesh.vertices, fmt="%.16e")
            fh.write(f"CELLS {mesh.n_cells} {5 * mesh.n_cells}\n")
            np.savetxt(fh, np.hstack([np.full((mesh.n_cells, 1), 4), mesh.cells]), fmt="%d")
            fh.write(f"CELL_TYPES {mesh.n_cells}\n")
            np.savetxt(fh, np.full(mesh.n_cells, VTK_TETRA), fmt="%d")
            if point_data:
                fh.write(f"POINT_DATA {n}\n")
            for name, values in point_data.items():
                if values.ndim == 2 and values.shape[1] == 3:
                    fh.write(f"VECTORS {name} double\n")
                    np.savetxt(fh, values, fmt="%.16e")
                else:
                    fh.write(f"SCALARS {name} double 1\n")
                    fh.write("LOOKUP_TABLE default\n")
                    np.savetxt(fh, values.reshape(-1), fmt="%.16e")
    except OSError as e:
        raise OutputError(f"Could not write VTK file ({e.strerror or e})", str(path)) from e
    logger.info("Wrote VTK grid with %d points to %s", n, path)
    return path


def export_field(path: Union[str, Path], field: Field, name: str = "u") -> Path:
    """Export a finite element field at the vertices of its mesh."""
    return write_vtk(path, field.space.mesh, {name: vertex_values(field)})
