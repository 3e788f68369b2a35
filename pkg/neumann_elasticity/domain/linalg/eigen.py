"""Dense symmetric and generalized symmetric eigensolvers (LAPACK via scipy)."""
import numpy as np
import scipy.linalg as la

from neumann_elasticity.infra.common import FactorizationError, SizeLimitError

DENSE_LIMIT = 2000


def _check_square(matrix: np.ndarray, name: str) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"{name} must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError(f"{name} has non-finite entries")
    return matrix


def dense_sym_generalized_eig(
    S: np.ndarray,
    N: np.ndarray,
    vectors: bool = False,
    limit: int = DENSE_LIMIT,
):
    """
    Eigenvalues of S x = lambda N x, ascending.

    N is Cholesky-reduced, the reduced matrix tridiagonalized and diagonalized
    by LAPACK's symmetric drivers.

    Raises:
        FactorizationError: If N is not SPD
        SizeLimitError: If the dimension exceeds ``limit``
    """
    S = _check_square(S, "S")
    N = _check_square(N, "N")
    if S.shape != N.shape:
        raise ValueError(f"S {S.shape} and N {N.shape} differ in shape")
    if S.shape[0] > limit:
        raise SizeLimitError(f"Dense eigenproblem of size {S.shape[0]} exceeds limit {limit}")
    try:
        la.cholesky(N, lower=True)
    except la.LinAlgError as e:
        raise FactorizationError("N not SPD") from e
    return la.eigh(S, N, eigvals_only=not vectors)


def dense_sym_eig(S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""
    S = _check_square(S, "S")
    return la.eigh(S)
