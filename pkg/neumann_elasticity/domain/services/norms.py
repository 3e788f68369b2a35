"""Quadrature of closed-form functions over meshes and finite element error norms."""
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel

from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.services.assembly import cell_chunks, facet_areas, physical_points
from neumann_elasticity.domain.services.function_space import Field
from neumann_elasticity.domain.services.quadrature import tet_basis, tetrahedron_rule, triangle_rule

NORM_DEGREE = 6


class ErrorNorms(BaseModel):
    l2_error: float
    h1_seminorm_error: float
    h1_error: float


def integrate_volume(mesh: Mesh, fn: Callable[[np.ndarray], np.ndarray], degree: int = NORM_DEGREE) -> np.ndarray:
    """Integral over the mesh of ``fn``, which maps (n, 3) points to (n, ...) values."""
    rule = tetrahedron_rule(degree)
    total = None
    for cells in cell_chunks(mesh.n_cells):
        x = physical_points(mesh.vertices, mesh.cells[cells], rule.points).reshape(-1, 3)
        wdet = (6.0 * mesh.cell_volumes[cells][:, None] * rule.weights[None, :]).ravel()
        part = np.tensordot(wdet, np.asarray(fn(x), dtype=float), axes=(0, 0))
        total = part if total is None else total + part
    return total


def integrate_boundary(
    mesh: Mesh,
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
    degree: int = NORM_DEGREE,
) -> np.ndarray:
    """Integral over the boundary of ``fn(points, outward_normals)``."""
    rule = triangle_rule(degree)
    x = physical_points(mesh.vertices, mesh.boundary_facets, rule.points).reshape(-1, 3)
    normals = np.repeat(mesh.facet_normals, rule.size, axis=0)
    wdet = (2.0 * facet_areas(mesh)[:, None] * rule.weights[None, :]).ravel()
    return np.tensordot(wdet, np.asarray(fn(x, normals), dtype=float), axes=(0, 0))


def error_norms(
    field: Field,
    exact: Callable[[np.ndarray], np.ndarray],
    exact_grad: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    degree: int = NORM_DEGREE,
) -> ErrorNorms:
    """
    L2 and H1 errors of a finite element field against a closed-form function.

    ``exact`` maps (n, 3) points to (n, value_dim) or (n,); ``exact_grad`` to
    (n, value_dim, 3) or (n, 3) with entry [.., a, d] = d u_a / d x_d.
    Without ``exact_grad`` only the L2 part is measured.
    """
    space = field.space
    mesh = space.mesh
    d = space.value_dim
    rule = tetrahedron_rule(degree)
    values, dvalues = tet_basis(space.degree, rule.points)

    l2_sq = 0.0
    semi_sq = 0.0
    for cells in cell_chunks(mesh.n_cells):
        n_cells = cells.stop - cells.start
        coeffs = field.coefficients[space.cell_dofs[cells]].reshape(n_cells, -1, d)
        x = physical_points(mesh.vertices, mesh.cells[cells], rule.points).reshape(-1, 3)
        wdet = 6.0 * mesh.cell_volumes[cells][:, None] * rule.weights[None, :]

        uh = np.einsum("qi,cia->cqa", values, coeffs)
        u = np.asarray(exact(x), dtype=float).reshape(n_cells, rule.size, d)
        l2_sq += float(np.einsum("cq,cqa->", wdet, (uh - u) ** 2))

        if exact_grad is not None:
            grads = np.einsum("qnk,ckd->cqnd", dvalues, space.barycentric_gradients[cells])
            grad_uh = np.einsum("cqid,cia->cqad", grads, coeffs)
            grad_u = np.asarray(exact_grad(x), dtype=float).reshape(n_cells, rule.size, d, 3)
            semi_sq += float(np.einsum("cq,cqad->", wdet, (grad_uh - grad_u) ** 2))

    return ErrorNorms(
        l2_error=float(np.sqrt(l2_sq)),
        h1_seminorm_error=float(np.sqrt(semi_sq)),
        h1_error=float(np.sqrt(l2_sq + semi_sq)),
    )
