"""Assembly of bilinear forms and load vectors on Lagrange spaces."""
from typing import Callable, Iterator, Optional

import numpy as np
import scipy.sparse as sp

from neumann_elasticity.domain.entities.forms import (
    DivCoupling,
    ElasticStiffness,
    EpsilonStiffness,
    FormKind,
    H1Inner,
    ScalarMass,
    ScalarStiffness,
    VectorMass,
)
from neumann_elasticity.domain.linalg.sparse import assemble_csr
from neumann_elasticity.domain.services.function_space import FunctionSpace
from neumann_elasticity.domain.services.quadrature import tet_basis, tetrahedron_rule, tri_basis, triangle_rule
from neumann_elasticity.infra.common import AssemblyError, get_logger

logger = get_logger(__name__)

CHUNK = 4096
LOAD_DEGREE = 4

VolumeFunction = Callable[[np.ndarray], np.ndarray]
BoundaryFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]

_STIFFNESS_KINDS = (ElasticStiffness, EpsilonStiffness, ScalarStiffness)


def cell_chunks(n_cells: int, size: int = CHUNK) -> Iterator[slice]:
    for start in range(0, n_cells, size):
        yield slice(start, min(start + size, n_cells))


def form_degree(kind: FormKind, trial: FunctionSpace, test: FunctionSpace) -> int:
    """Quadrature degree: 1 for P1 stiffness, 2 for other P1 forms, 4 once P2 is involved."""
    if max(trial.degree, test.degree) > 1:
        return 4
    return 1 if isinstance(kind, _STIFFNESS_KINDS) else 2


def _check_spaces(kind: FormKind, trial: FunctionSpace, test: FunctionSpace) -> None:
    if not trial.shares_mesh(test):
        raise AssemblyError("Trial and test spaces live on different meshes")
    if isinstance(kind, DivCoupling):
        if trial.is_vector or not test.is_vector:
            raise AssemblyError("DivCoupling needs a scalar trial space and a vector test space")
        return
    if trial.family is not test.family:
        raise AssemblyError(f"{type(kind).__name__} needs equal trial and test spaces")
    if isinstance(kind, (ElasticStiffness, EpsilonStiffness, VectorMass)) and not trial.is_vector:
        raise AssemblyError(f"{type(kind).__name__} needs a vector space")
    if isinstance(kind, (ScalarMass, ScalarStiffness)) and trial.is_vector:
        raise AssemblyError(f"{type(kind).__name__} needs a scalar space")


def _vectorize(block: np.ndarray) -> np.ndarray:
    """(c, n, n) scalar element matrix -> (c, 3n, 3n) with identity coupling of components."""
    c, n, m = block.shape
    out = block[:, :, None, :, None] * np.eye(3)[None, None, :, None, :]
    return out.reshape(c, 3 * n, 3 * m)


def _element_matrices(kind: FormKind, trial: FunctionSpace, test: FunctionSpace, cells: slice, degree: int) -> np.ndarray:
    rule = tetrahedron_rule(degree)
    mesh = test.mesh
    wdet = 6.0 * mesh.cell_volumes[cells][:, None] * rule.weights[None, :]
    bary = test.barycentric_gradients[cells]

    values, dvalues = tet_basis(test.degree, rule.points)
    grads = np.einsum("qnk,ckd->cqnd", dvalues, bary)

    if isinstance(kind, DivCoupling):
        trial_values, _ = tet_basis(trial.degree, rule.points)
        div = np.einsum("cq,cqia,qk->ciak", wdet, grads, trial_values)
        return div.reshape(div.shape[0], -1, trial_values.shape[1])

    def mass():
        return np.einsum("cq,qi,qj->cij", wdet, values, values)

    def stiffness():
        return np.einsum("cq,cqid,cqjd->cij", wdet, grads, grads)

    if isinstance(kind, ScalarMass):
        local = mass()
    elif isinstance(kind, ScalarStiffness):
        local = stiffness()
    elif isinstance(kind, VectorMass):
        local = _vectorize(mass())
    elif isinstance(kind, H1Inner):
        local = mass() + stiffness()
        if test.is_vector:
            local = _vectorize(local)
    elif isinstance(kind, (ElasticStiffness, EpsilonStiffness)):
        mu = kind.mu
        lam = kind.lam if isinstance(kind, ElasticStiffness) else 0.0
        cross = np.einsum("cq,cqia,cqjb->ciajb", wdet, grads, grads)
        local = mu * _vectorize(stiffness()).reshape(cross.shape)
        local = local + mu * cross.transpose(0, 1, 4, 3, 2)
        if lam:
            local = local + lam * cross
        n = grads.shape[2]
        local = local.reshape(-1, 3 * n, 3 * n)
    else:
        raise AssemblyError(f"Unknown form kind {kind!r}")

    return 0.5 * (local + local.transpose(0, 2, 1))


def assemble_form(kind: FormKind, trial: FunctionSpace, test: FunctionSpace) -> sp.csr_matrix:
    """
    Assemble a bilinear form into CSR, rows indexed by test dofs.

    Symmetric kinds are assembled from exactly symmetric element matrices, so
    the result satisfies A == A.T entrywise.

    Raises:
        AssemblyError: If the spaces do not fit the form kind
    """
    _check_spaces(kind, trial, test)
    degree = form_degree(kind, trial, test)
    rows, cols, vals = [], [], []
    for cells in cell_chunks(test.mesh.n_cells):
        local = _element_matrices(kind, trial, test, cells, degree)
        test_dofs = test.cell_dofs[cells]
        trial_dofs = trial.cell_dofs[cells]
        rows.append(np.broadcast_to(test_dofs[:, :, None], local.shape).ravel())
        cols.append(np.broadcast_to(trial_dofs[:, None, :], local.shape).ravel())
        vals.append(local.ravel())

    matrix = assemble_csr(np.concatenate(rows), np.concatenate(cols), np.concatenate(vals), (test.dof_count, trial.dof_count))
    logger.debug("Assembled %s on %s: nnz=%d", type(kind).__name__, test, matrix.nnz)
    return matrix


def physical_points(vertices: np.ndarray, simplices: np.ndarray, bary: np.ndarray) -> np.ndarray:
    """(n_simplices, q, 3) points with barycentric coordinates ``bary`` (q, k)."""
    return np.einsum("qk,ckd->cqd", bary, vertices[simplices])


def facet_areas(mesh) -> np.ndarray:
    p = mesh.vertices[mesh.boundary_facets]
    return 0.5 * np.linalg.norm(np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]), axis=1)


def assemble_load(
    space: FunctionSpace,
    f: Optional[VolumeFunction],
    h: Optional[BoundaryFunction] = None,
    degree: int = LOAD_DEGREE,
) -> np.ndarray:
    """
    Load vector b_i = (f, phi_i) + (h, phi_i) on the boundary.

    Args:
        space: Test space
        f: Volume density, maps (n, 3) points to (n, value_dim) or (n,)
        h: Boundary traction, maps points and outward normals to the same shapes
        degree: Quadrature degree for both volume and facet rules

    Returns:
        Dual representation vector of length space.dof_count
    """
    mesh = space.mesh
    d = space.value_dim
    b = np.zeros(space.dof_count)

    if f is not None:
        rule = tetrahedron_rule(degree)
        values, _ = tet_basis(space.degree, rule.points)
        for cells in cell_chunks(mesh.n_cells):
            x = physical_points(mesh.vertices, mesh.cells[cells], rule.points)
            fx = np.asarray(f(x.reshape(-1, 3)), dtype=float).reshape(x.shape[0], rule.size, d)
            wdet = 6.0 * mesh.cell_volumes[cells][:, None] * rule.weights[None, :]
            local = np.einsum("cq,qi,cqa->cia", wdet, values, fx).reshape(x.shape[0], -1)
            b += np.bincount(space.cell_dofs[cells].ravel(), weights=local.ravel(), minlength=space.dof_count)

    if h is not None and len(mesh.boundary_facets):
        rule = triangle_rule(degree)
        values = tri_basis(space.degree, rule.points)
        facets = mesh.boundary_facets
        x = physical_points(mesh.vertices, facets, rule.points)
        normals = np.repeat(mesh.facet_normals, rule.size, axis=0)
        hx = np.asarray(h(x.reshape(-1, 3), normals), dtype=float).reshape(x.shape[0], rule.size, d)
        wdet = 2.0 * facet_areas(mesh)[:, None] * rule.weights[None, :]
        local = np.einsum("fq,qi,fqa->fia", wdet, values, hx).reshape(x.shape[0], -1)
        nodes = space.facet_nodes
        dofs = (d * nodes[:, :, None] + np.arange(d)).reshape(nodes.shape[0], -1)
        b += np.bincount(dofs.ravel(), weights=local.ravel(), minlength=space.dof_count)

    return b
