"""CSR construction with a deterministic duplicate merge."""
import numpy as np
import scipy.sparse as sp


def assemble_csr(rows: np.ndarray, cols: np.ndarray, values: np.ndarray, shape: tuple[int, int]) -> sp.csr_matrix:
    """
    Sum COO triplets into a canonical CSR matrix.

    Triplets are stable-sorted by (row, col) and each run of duplicates is
    summed in input order, so the result does not depend on sparse library
    internals and mirrored entries of symmetric element matrices come out
    bitwise equal.
    """
    n_rows, n_cols = shape
    keys = np.asarray(rows, dtype=np.int64).ravel() * n_cols + np.asarray(cols, dtype=np.int64).ravel()
    values = np.asarray(values, dtype=float).ravel()
    if keys.size == 0:
        return sp.csr_matrix(shape)

    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    starts = np.concatenate([[0], np.flatnonzero(np.diff(keys)) + 1])
    data = np.add.reduceat(values[order], starts)
    unique = keys[starts]

    row_of = unique // n_cols
    indices = (unique % n_cols).astype(np.int64)
    indptr = np.searchsorted(row_of, np.arange(n_rows + 1), side="left")
    matrix = sp.csr_matrix((data, indices, indptr), shape=shape)
    matrix.has_sorted_indices = True
    return matrix


def canonical_csr(matrix) -> sp.csr_matrix:
    """CSR copy with sorted, deduplicated column indices."""
    csr = sp.csr_matrix(matrix, dtype=float, copy=True)
    csr.sum_duplicates()
    csr.sort_indices()
    return csr


def is_symmetric(matrix: sp.spmatrix, tol: float = 0.0) -> bool:
    """True when max |A - A^T| <= tol * max |A|."""
    diff = abs(matrix - matrix.T)
    worst = diff.max() if diff.nnz else 0.0
    scale = abs(matrix).max() if matrix.nnz else 0.0
    return bool(worst <= tol * scale)


def max_abs(matrix: sp.spmatrix) -> float:
    return float(abs(matrix).max()) if matrix.nnz else 0.0
