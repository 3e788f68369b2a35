"""Kernel removal by prescribing exact values at a few boundary dofs."""
import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict

from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.study import PinpointStrategy
from neumann_elasticity.domain.linalg.sparse import canonical_csr
from neumann_elasticity.domain.services.function_space import Field, FunctionSpace
from neumann_elasticity.infra.common import AssemblyError, DimensionError, MeshError, get_logger

logger = get_logger(__name__)

# corner_vertices slots; the i-th entry carries i + 1 components under 3circ
PIN_CORNERS = (2, 1, 0)


class PinpointedSystem(BaseModel):
    """Symmetrically eliminated system and the constrained dofs."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    matrix: sp.csr_matrix
    rhs: np.ndarray
    dofs: np.ndarray


def _corner(mesh: Mesh, slot: int) -> int:
    vertex = int(mesh.corner_vertices[slot])
    if not 0 <= vertex < mesh.n_vertices:
        raise MeshError(f"Corner {slot} refers to vertex {vertex}, mesh has {mesh.n_vertices}")
    return vertex


def _first_facet_with(mesh: Mesh, vertex: int) -> np.ndarray:
    hits = np.flatnonzero((mesh.boundary_facets == vertex).any(axis=1))
    if hits.size == 0:
        raise MeshError(f"No boundary facet contains vertex {vertex}")
    return mesh.boundary_facets[hits[0]]


def _circle_components(mesh: Mesh) -> list[tuple[int, tuple[int, ...]]]:
    """
    Corners and components for 3circ.

    The full corner kills translations. At the second corner the component
    most aligned with the edge to the full corner is skipped, and the single
    component at the last corner is the one the remaining rotation moves most.
    """
    c, b, a = (_corner(mesh, slot) for slot in PIN_CORNERS)
    d = mesh.vertices[b] - mesh.vertices[a]
    skipped = int(np.argmax(np.abs(d)))
    spin = np.cross(d, mesh.vertices[c] - mesh.vertices[a])
    return [
        (c, (int(np.argmax(np.abs(spin))),)),
        (b, tuple(k for k in range(3) if k != skipped)),
        (a, (0, 1, 2)),
    ]


def pinpoint_dofs(space: FunctionSpace, strategy: PinpointStrategy) -> np.ndarray:
    """
    Sorted global dofs constrained by ``strategy``.

    Raises:
        AssemblyError: If the strategy does not fit the space's value dimension
        MeshError: If a requested vertex is not on the mesh boundary
    """
    mesh = space.mesh
    if strategy == "poisson-corner":
        if space.is_vector:
            raise AssemblyError("poisson-corner pins a scalar space")
        return np.array([_corner(mesh, 0)])
    if not space.is_vector:
        raise AssemblyError(f"Strategy {strategy} pins a vector space")

    if strategy == "3circ":
        parts = [space.component_dofs(np.array([v]), comps) for v, comps in _circle_components(mesh)]
    elif strategy == "3dot":
        parts = [space.component_dofs(np.array([_corner(mesh, slot) for slot in PIN_CORNERS]))]
    elif strategy == "1tri":
        if len(mesh.boundary_facets) == 0:
            raise MeshError("Mesh has no boundary facets")
        parts = [space.component_dofs(mesh.boundary_facets[0])]
    elif strategy == "3tri":
        parts = [space.component_dofs(_first_facet_with(mesh, _corner(mesh, slot))) for slot in (0, 1, 2)]
    else:
        raise ValueError(f"Unknown pinpoint strategy {strategy!r}")
    return np.unique(np.concatenate(parts))


def eliminate(A: sp.spmatrix, b: np.ndarray, dofs: np.ndarray, values: np.ndarray) -> tuple[sp.csr_matrix, np.ndarray]:
    """Zero constrained rows and columns, put 1 on their diagonal and move the coupling to the rhs."""
    n = A.shape[0]
    if A.shape != (n, n) or len(b) != n:
        raise DimensionError(f"Matrix {A.shape} and rhs of length {len(b)} do not match")
    mask = np.zeros(n, dtype=bool)
    mask[dofs] = True
    prescribed = np.zeros(n)
    prescribed[dofs] = values

    rhs = np.asarray(b, dtype=float) - A @ prescribed
    rhs[dofs] = values
    keep = sp.diags((~mask).astype(float))
    matrix = keep @ A @ keep + sp.diags(mask.astype(float))
    return canonical_csr(matrix), rhs


def pinpoint(A: sp.spmatrix, b: np.ndarray, strategy: PinpointStrategy, exact: Field) -> PinpointedSystem:
    """
    Prescribe the exact solution's nodal values at the strategy's dofs.

    Args:
        A: Singular stiffness matrix on ``exact.space``
        b: Load vector
        strategy: One of 3circ, 1tri, 3tri, 3dot, poisson-corner
        exact: Interpolant of the exact solution

    Returns:
        SPD matrix, modified rhs and the constrained dofs
    """
    dofs = pinpoint_dofs(exact.space, strategy)
    matrix, rhs = eliminate(A, b, dofs, exact.coefficients[dofs])
    logger.debug("Pinpoint %s constrains %d dofs", strategy, len(dofs))
    return PinpointedSystem(matrix=matrix, rhs=rhs, dofs=dofs)
