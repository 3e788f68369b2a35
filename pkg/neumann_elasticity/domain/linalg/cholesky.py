"""Sparse symmetric factorization used for every exact Riesz-map block."""
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, SuperLU, splu

from neumann_elasticity.domain.linalg.sparse import canonical_csr
from neumann_elasticity.infra.common import DimensionError, FactorizationError, get_logger

logger = get_logger(__name__)

PIVOT_RTOL = 1e-10


class CholeskyFactor:
    """
    Symmetric-mode SuperLU factor with a minimum-degree ordering.

    Diagonal pivoting on a symmetric ordering makes U = D L^T, so the
    Cholesky factor is L D^{1/2}.
    """

    def __init__(self, lu: SuperLU, dim: int):
        self._lu = lu
        self.dim = dim

    @property
    def perm(self) -> np.ndarray:
        """Fill-reducing column permutation."""
        return self._lu.perm_c

    @cached_property
    def lower(self) -> sp.csc_matrix:
        pivots = self._lu.U.diagonal()
        return (self._lu.L @ sp.diags(np.sqrt(pivots))).tocsc()

    def solve(self, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=float)
        if b.shape[0] != self.dim:
            raise DimensionError(f"Factor of dimension {self.dim} cannot solve rhs of length {b.shape[0]}")
        return self._lu.solve(b)

    def reconstruct(self, x: np.ndarray) -> np.ndarray:
        """Apply the factored matrix, Pr^T L U Pc^T x."""
        n = self.dim
        pr = sp.csc_matrix((np.ones(n), (self._lu.perm_r, np.arange(n))), shape=(n, n))
        pc = sp.csc_matrix((np.ones(n), (np.arange(n), self._lu.perm_c)), shape=(n, n))
        return pr.T @ (self._lu.L @ (self._lu.U @ (pc.T @ x)))

    def as_operator(self) -> LinearOperator:
        """Inverse action as a linear operator."""
        return LinearOperator((self.dim, self.dim), matvec=self.solve, dtype=float)


def sparse_cholesky(matrix) -> CholeskyFactor:
    """
    Factor a symmetric positive definite sparse matrix.

    Raises:
        FactorizationError: "matrix not SPD" on a zero, negative or
            numerically vanishing pivot
    """
    csr = canonical_csr(matrix)
    if csr.shape[0] != csr.shape[1]:
        raise DimensionError(f"Cannot factor non-square matrix {csr.shape}")
    n = csr.shape[0]

    try:
        lu = splu(
            csr.tocsc(),
            permc_spec="MMD_AT_PLUS_A",
            diag_pivot_thresh=0.0,
            options={"SymmetricMode": True, "Equil": False},
        )
    except RuntimeError as e:
        raise FactorizationError("matrix not SPD") from e

    pivots = lu.U.diagonal()
    scale = float(np.abs(csr.diagonal()).max()) if n else 0.0
    if np.any(pivots <= PIVOT_RTOL * scale):
        raise FactorizationError("matrix not SPD")

    logger.debug("Factored %d x %d matrix, fill nnz=%d", n, n, lu.L.nnz + lu.U.nnz)
    return CholeskyFactor(lu, n)


def solve_factor(factor: CholeskyFactor, b: np.ndarray) -> np.ndarray:
    return factor.solve(b)
