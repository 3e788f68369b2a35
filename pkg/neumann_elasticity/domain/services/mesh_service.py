"""Structured tetrahedral meshes of boxes: generation, grading, rigid transforms, refinement."""
from itertools import permutations
from typing import Sequence

import numpy as np

from neumann_elasticity.domain.entities.mesh import BoxMeshParams, Grading, Interval, Mesh, RigidTransform
from neumann_elasticity.infra.common import MeshError, get_logger

logger = get_logger(__name__)

MAX_CUBES = 2**22

# Faces of a tetrahedron, face k is opposite local vertex k.
_LOCAL_FACES = np.array([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])


def _validate(bounds: Sequence[Interval], divisions: Sequence[int], grading: Grading) -> None:
    if len(bounds) != 3 or len(divisions) != 3:
        raise MeshError("Box meshes need three intervals and three division counts")
    for lo, hi in bounds:
        if not hi > lo:
            raise MeshError(f"Degenerate interval [{lo}, {hi}]")
    for n in divisions:
        if int(n) != n or n < 1:
            raise MeshError(f"Divisions must be positive integers, got {tuple(divisions)}")
    if int(np.prod([int(n) for n in divisions], dtype=np.int64)) > MAX_CUBES:
        raise MeshError(f"Requested divisions {tuple(divisions)} exceed {MAX_CUBES} cubes")
    if grading.kind != "uniform" and grading.beta < 1.0:
        raise MeshError(f"Grading exponent must be >= 1, got {grading.beta}")


def _graded_unit_coordinates(divisions: Sequence[int], grading: Grading) -> np.ndarray:
    """Grid points of the unit cube, pulled toward the attractor along rays."""
    axes = [np.linspace(0.0, 1.0, n + 1) for n in divisions]
    s = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    graded = grading.graded_axes
    if not graded or grading.beta == 1.0:
        return s

    t = np.empty((s.shape[0], len(graded)))
    for col, a in enumerate(graded):
        t[:, col] = s[:, a] if grading.corner[a] == 0 else 1.0 - s[:, a]
    rho = t.max(axis=1)
    scale = np.zeros_like(rho)
    positive = rho > 0.0
    scale[positive] = rho[positive] ** (grading.beta - 1.0)
    t *= scale[:, None]
    for col, a in enumerate(graded):
        s[:, a] = t[:, col] if grading.corner[a] == 0 else 1.0 - t[:, col]
    return s


def _kuhn_cells(divisions: Sequence[int]) -> np.ndarray:
    nx, ny, nz = divisions

    def index(i, j, k):
        return (i * (ny + 1) + j) * (nz + 1) + k

    base = np.stack(np.meshgrid(np.arange(nx), np.arange(ny), np.arange(nz), indexing="ij"), axis=-1).reshape(-1, 3)
    cells = []
    for perm in permutations(range(3)):
        corner = base.copy()
        tet = [index(*corner.T)]
        for axis in perm:
            corner[:, axis] += 1
            tet.append(index(*corner.T))
        tet = np.stack(tet, axis=1)
        inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
        if inversions % 2:
            tet = tet[:, [0, 1, 3, 2]]
        cells.append(tet)
    # cube-major ordering keeps neighbouring cells close in memory
    return np.stack(cells, axis=1).reshape(-1, 4)


def _boundary_facets(vertices: np.ndarray, cells: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    faces = cells[:, _LOCAL_FACES].reshape(-1, 3)
    keys = np.sort(faces, axis=1)
    _, first, counts = np.unique(keys, axis=0, return_index=True, return_counts=True)
    if counts.max() > 2:
        raise MeshError("Non-manifold mesh: a facet is shared by more than two cells")

    boundary = first[counts == 1]
    facets = faces[boundary]
    owners = boundary // 4

    a, b, c = (vertices[facets[:, k]] for k in range(3))
    normals = np.cross(b - a, c - a)
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    centroids = vertices[cells[owners]].mean(axis=1)
    inward = np.einsum("ij,ij->i", normals, centroids - a) > 0.0
    normals[inward] *= -1.0
    interior = int(np.count_nonzero(counts == 2))
    return facets, normals, owners, interior


def build_box_mesh(
    bounds: Sequence[Interval],
    divisions: Sequence[int],
    grading: Grading | None = None,
) -> Mesh:
    """
    Build a structured Kuhn mesh of an axis-aligned box.

    Args:
        bounds: Three (lo, hi) intervals
        divisions: Cubes per direction
        grading: Grading descriptor, uniform if None

    Returns:
        Mesh with 6 * prod(divisions) positively oriented cells

    Raises:
        MeshError: On invalid divisions, degenerate intervals or beta < 1
    """
    grading = grading or Grading()
    _validate(bounds, divisions, grading)
    divisions = tuple(int(n) for n in divisions)

    lo = np.array([b[0] for b in bounds], dtype=float)
    span = np.array([b[1] - b[0] for b in bounds], dtype=float)
    vertices = lo + _graded_unit_coordinates(divisions, grading) * span
    cells = _kuhn_cells(divisions)

    p = vertices[cells]
    signed = np.einsum("ij,ij->i", p[:, 1] - p[:, 0], np.cross(p[:, 2] - p[:, 0], p[:, 3] - p[:, 0]))
    if np.any(signed <= 0.0):
        raise MeshError(f"Grading {grading.kind} with beta={grading.beta} inverted {np.count_nonzero(signed <= 0)} cells")

    facets, normals, owners, interior = _boundary_facets(vertices, cells)

    nx, ny, nz = divisions
    corners = np.array([
        (i * nx * (ny + 1) + j * ny) * (nz + 1) + k * nz
        for k in (0, 1) for j in (0, 1) for i in (0, 1)
    ])

    logger.debug("Built box mesh %s: %d vertices, %d cells", divisions, len(vertices), len(cells))
    return Mesh(
        vertices=vertices,
        cells=cells,
        boundary_facets=facets,
        facet_normals=normals,
        facet_cells=owners,
        corner_vertices=corners,
        interior_facet_count=interior,
        params=BoxMeshParams(bounds=tuple(tuple(map(float, b)) for b in bounds), divisions=divisions, grading=grading),
    )


def transform_mesh(
    mesh: Mesh,
    angles: Sequence[float],
    translation: Sequence[float],
) -> Mesh:
    """
    Rotate by R_z R_y R_x (fixed axes, x first) and translate.

    Connectivity is unchanged; normals are rotated with the vertices.
    """
    transform = RigidTransform(angles=tuple(angles), translation=tuple(translation))
    rotation = transform.rotation_matrix()
    vertices = mesh.vertices @ rotation.T + np.asarray(translation, dtype=float)
    normals = mesh.facet_normals @ rotation.T
    return Mesh(
        vertices=vertices,
        cells=mesh.cells,
        boundary_facets=mesh.boundary_facets,
        facet_normals=normals,
        facet_cells=mesh.facet_cells,
        corner_vertices=mesh.corner_vertices,
        interior_facet_count=mesh.interior_facet_count,
        params=mesh.params.with_transform(transform),
    )


def generate_mesh(params: BoxMeshParams) -> Mesh:
    """Build the box mesh described by ``params`` and replay its transforms."""
    mesh = build_box_mesh(params.bounds, params.divisions, params.grading)
    for transform in params.transforms:
        mesh = transform_mesh(mesh, transform.angles, transform.translation)
    return mesh


def refine(params: BoxMeshParams) -> Mesh:
    """Regenerate with every division doubled and the same grading and transforms."""
    return generate_mesh(params.refined())


def refine_mesh(mesh: Mesh) -> Mesh:
    """Refine a mesh from its stored generation parameters."""
    return refine(mesh.params)


def mesh_sequence(params: BoxMeshParams, levels: int) -> list[Mesh]:
    """Meshes for ``levels`` consecutive refinements starting at ``params``."""
    meshes = []
    for _ in range(levels):
        meshes.append(generate_mesh(params))
        params = params.refined()
    return meshes
