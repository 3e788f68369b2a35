"""Mesh sequence of a study."""
from pydantic import BaseModel

from neumann_elasticity.domain.entities.mesh import BoxMeshParams, Grading, Mesh
from neumann_elasticity.domain.entities.study import MeshFamily
from neumann_elasticity.domain.services.manufactured import example_box_params, unit_cube_params
from neumann_elasticity.domain.services.mesh_service import mesh_sequence
from neumann_elasticity.infra.common import get_logger

logger = get_logger(__name__)


class LevelMesh(BaseModel):
    level: int
    mesh: Mesh


def family_grading(family: MeshFamily) -> Grading:
    """
    Grading of a family.

    The elastic box is refined toward an edge along its long axis, the unit
    cube toward the origin.
    """
    if family.kind == "uniform":
        return Grading()
    if family.geometry == "example-box":
        return Grading(kind="edge", beta=family.beta, corner=(0, 0, 0), axis=1)
    return Grading(kind="vertex", beta=family.beta, corner=(0, 0, 0))


def family_params(family: MeshFamily) -> BoxMeshParams:
    """Generation parameters of level 0."""
    grading = family_grading(family)
    if family.geometry == "example-box":
        return example_box_params(family.base_divisions, grading)
    return unit_cube_params(family.base_divisions, grading)


def build_levels(family: MeshFamily, levels: int) -> list[LevelMesh]:
    """
    Meshes of levels first_level .. first_level + levels - 1.

    Level l has the base divisions times 2^l.
    """
    params = family_params(family)
    for _ in range(family.first_level):
        params = params.refined()
    meshes = mesh_sequence(params, levels)
    result = [LevelMesh(level=family.first_level + k, mesh=mesh) for k, mesh in enumerate(meshes)]
    for item in result:
        logger.info("Level %d: %d vertices, %d cells", item.level, item.mesh.n_vertices, item.mesh.n_cells)
    return result
