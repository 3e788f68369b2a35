"""Block-diagonal Riesz-map preconditioners with exact factorized blocks."""
import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator

from neumann_elasticity.domain.entities.solver import StoppingRule
from neumann_elasticity.domain.formulations.blocks import block_diagonal
from neumann_elasticity.domain.krylov.cg import cg
from neumann_elasticity.domain.krylov.operators import identity_operator, low_rank_update
from neumann_elasticity.domain.linalg.cholesky import CholeskyFactor
from neumann_elasticity.domain.services.rigid import RIGID_DIM
from neumann_elasticity.infra.common import get_logger

logger = get_logger(__name__)

INNER_RTOL = 1e-12


def precond_B1(H_factor: CholeskyFactor, n_rigid: int = RIGID_DIM) -> LinearOperator:
    """diag(H^{-1}, I) with H the H1 inner product matrix."""
    return block_diagonal([H_factor.as_operator(), identity_operator(n_rigid)])


def precond_BM(AplusM_factor: CholeskyFactor, n_rigid: int = RIGID_DIM) -> LinearOperator:
    """diag((A + M)^{-1}, I)."""
    return block_diagonal([AplusM_factor.as_operator(), identity_operator(n_rigid)])


def natural_inverse(A, W: np.ndarray, AplusM_factor: CholeskyFactor, rtol: float = INNER_RTOL) -> LinearOperator:
    """(A + W W^T)^{-1} applied by inner CG preconditioned with (A + M)^{-1}."""
    operator = low_rank_update(A, W)
    inner = AplusM_factor.as_operator()
    stop = StoppingRule(mode="relative", tolerance=rtol, max_iterations=1000)

    def apply(x: np.ndarray) -> np.ndarray:
        report = cg(operator, inner, x, None, stop)
        if not report.converged:
            logger.warning("Inner natural-norm solve stopped: %s", report.stop_reason)
        return report.solution

    return LinearOperator(operator.shape, matvec=apply, dtype=float)


def precond_BE(A, W: np.ndarray, AplusM_factor: CholeskyFactor, rtol: float = INNER_RTOL) -> LinearOperator:
    """diag((A + W W^T)^{-1}, I)."""
    return block_diagonal([natural_inverse(A, W, AplusM_factor, rtol), identity_operator(W.shape[1])])


def riesz_matrix_BE(A: sp.spmatrix, W: np.ndarray) -> np.ndarray:
    """Dense diag(A + W W^T, I), the inverse of B_E."""
    return _dense_block_diag(A.toarray() + W @ W.T, W.shape[1])


def riesz_matrix_BM(A: sp.spmatrix, M: sp.spmatrix, n_rigid: int = RIGID_DIM) -> np.ndarray:
    """Dense diag(A + M, I), the inverse of B_M."""
    return _dense_block_diag((A + M).toarray(), n_rigid)


def _dense_block_diag(top: np.ndarray, n_rigid: int) -> np.ndarray:
    n = top.shape[0]
    out = np.zeros((n + n_rigid, n + n_rigid))
    out[:n, :n] = top
    out[n:, n:] = np.eye(n_rigid)
    return out
