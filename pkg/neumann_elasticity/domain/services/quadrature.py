"""Simplex quadrature rules and reference Lagrange bases in barycentric form."""
from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import roots_jacobi

# Local edges of a tetrahedron and of a triangle, by local vertex pairs.
TET_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
TRI_EDGES = ((0, 1), (0, 2), (1, 2))


class QuadratureRule(BaseModel):
    """Points in barycentric coordinates and weights summing to the reference measure."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    points: np.ndarray
    weights: np.ndarray
    degree: int = Field(ge=0)

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])


def _gauss_jacobi_unit(n: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """n-point rule on [0, 1] for the weight (1 - t)^alpha."""
    x, w = roots_jacobi(n, alpha, 0.0)
    return (1.0 + x) / 2.0, w / 2.0 ** (alpha + 1.0)


@lru_cache(maxsize=None)
def tetrahedron_rule(degree: int) -> QuadratureRule:
    """
    Collapsed-coordinate Gauss-Jacobi rule on the reference tetrahedron.

    Exact for polynomials of total degree <= ``degree``; weights sum to 1/6.
    """
    if degree <= 1:
        return QuadratureRule(points=np.full((1, 4), 0.25), weights=np.array([1.0 / 6.0]), degree=1)
    n = (degree + 2) // 2
    a, wa = _gauss_jacobi_unit(n, 0.0)
    b, wb = _gauss_jacobi_unit(n, 1.0)
    c, wc = _gauss_jacobi_unit(n, 2.0)
    A, B, C = np.meshgrid(a, b, c, indexing="ij")
    z = C.ravel()
    y = (B * (1.0 - C)).ravel()
    x = (A * (1.0 - B) * (1.0 - C)).ravel()
    weights = np.einsum("i,j,k->ijk", wa, wb, wc).ravel()
    points = np.stack([1.0 - x - y - z, x, y, z], axis=1)
    return QuadratureRule(points=points, weights=weights, degree=2 * n - 1)


@lru_cache(maxsize=None)
def triangle_rule(degree: int) -> QuadratureRule:
    """Collapsed Gauss-Jacobi rule on the reference triangle; weights sum to 1/2."""
    if degree <= 1:
        return QuadratureRule(points=np.full((1, 3), 1.0 / 3.0), weights=np.array([0.5]), degree=1)
    n = (degree + 2) // 2
    a, wa = _gauss_jacobi_unit(n, 0.0)
    b, wb = _gauss_jacobi_unit(n, 1.0)
    A, B = np.meshgrid(a, b, indexing="ij")
    y = B.ravel()
    x = (A * (1.0 - B)).ravel()
    weights = np.outer(wa, wb).ravel()
    points = np.stack([1.0 - x - y, x, y], axis=1)
    return QuadratureRule(points=points, weights=weights, degree=2 * n - 1)


def tet_basis(degree: int, lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Lagrange basis on a tetrahedron evaluated at barycentric points.

    Args:
        degree: 1 or 2
        lam: (q, 4) barycentric coordinates

    Returns:
        values (q, nloc) and derivatives with respect to each barycentric
        coordinate (q, nloc, 4). Physical gradients follow by contracting the
        last axis with the cell's barycentric gradients.
    """
    q = lam.shape[0]
    if degree == 1:
        return lam.copy(), np.broadcast_to(np.eye(4), (q, 4, 4)).copy()
    if degree != 2:
        raise ValueError(f"Unsupported element degree {degree}")

    values = np.empty((q, 10))
    dvalues = np.zeros((q, 10, 4))
    for i in range(4):
        values[:, i] = lam[:, i] * (2.0 * lam[:, i] - 1.0)
        dvalues[:, i, i] = 4.0 * lam[:, i] - 1.0
    for e, (i, j) in enumerate(TET_EDGES):
        values[:, 4 + e] = 4.0 * lam[:, i] * lam[:, j]
        dvalues[:, 4 + e, i] = 4.0 * lam[:, j]
        dvalues[:, 4 + e, j] = 4.0 * lam[:, i]
    return values, dvalues


def tri_basis(degree: int, mu: np.ndarray) -> np.ndarray:
    """Trace of the tetrahedral basis on a face, at barycentric points (q, 3)."""
    if degree == 1:
        return mu.copy()
    values = np.empty((mu.shape[0], 6))
    for i in range(3):
        values[:, i] = mu[:, i] * (2.0 * mu[:, i] - 1.0)
    for e, (i, j) in enumerate(TRI_EDGES):
        values[:, 3 + e] = 4.0 * mu[:, i] * mu[:, j]
    return values
