"""Tests for sparse assembly helpers, the sparse Cholesky factor and dense eigensolvers."""
import numpy as np
import pytest
import scipy.sparse as sp

from neumann_elasticity.domain.entities.forms import ScalarStiffness
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.linalg.eigen import dense_sym_eig, dense_sym_generalized_eig
from neumann_elasticity.domain.linalg.sparse import assemble_csr, canonical_csr, is_symmetric
from neumann_elasticity.domain.services.assembly import assemble_form
from neumann_elasticity.domain.services.function_space import FunctionSpace
from neumann_elasticity.domain.services.mesh_service import build_box_mesh
from neumann_elasticity.infra.common import DimensionError, FactorizationError, SizeLimitError


def _laplacian_1d(n: int) -> sp.csr_matrix:
    return sp.diags([-np.ones(n - 1), 2.0 * np.ones(n), -np.ones(n - 1)], [-1, 0, 1], format="csr")


def test_assemble_csr_merges_duplicates():
    """Test duplicate triplets are summed and indices come out sorted."""
    rows = np.array([1, 0, 1, 0, 1])
    cols = np.array([0, 1, 0, 1, 2])
    vals = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    matrix = assemble_csr(rows, cols, vals, (2, 3))
    assert np.array_equal(matrix.toarray(), [[0.0, 6.0, 0.0], [4.0, 0.0, 5.0]])
    assert matrix.nnz == 3
    assert np.array_equal(matrix.indices, [1, 0, 2])


def test_assemble_csr_empty_rows_and_triplets():
    """Test empty input yields an empty matrix and empty rows get valid pointers."""
    assert assemble_csr(np.array([]), np.array([]), np.array([]), (3, 3)).nnz == 0
    matrix = assemble_csr(np.array([2]), np.array([0]), np.array([1.0]), (4, 2))
    assert np.array_equal(matrix.indptr, [0, 0, 0, 1, 1])


def test_assemble_csr_is_order_independent_for_symmetric_pairs():
    """Test mirrored contributions produce a bitwise symmetric matrix."""
    rng = np.random.default_rng(3)
    rows = rng.integers(0, 6, 40)
    cols = rng.integers(0, 6, 40)
    vals = rng.standard_normal(40)
    # each pair is entered as (i, j) then (j, i), the way element matrices are scattered
    matrix = assemble_csr(
        np.stack([rows, cols], axis=1).ravel(), np.stack([cols, rows], axis=1).ravel(), np.repeat(vals, 2), (6, 6)
    )
    assert is_symmetric(matrix, 0.0)


def test_canonical_csr():
    """Test canonical_csr sums duplicates of an unsorted matrix."""
    raw = sp.csr_matrix((np.array([1.0, 2.0]), np.array([1, 1]), np.array([0, 2])), shape=(1, 2))
    canon = canonical_csr(raw)
    assert canon.nnz == 1
    assert canon[0, 1] == 3.0


def test_cholesky_solves_spd_system():
    """Test factor solve, reconstruction and the lower factor."""
    A = _laplacian_1d(30) + sp.eye(30) * 0.1
    factor = sparse_cholesky(A)
    rng = np.random.default_rng(0)
    x = rng.standard_normal(30)
    assert np.allclose(factor.reconstruct(x), A @ x)
    assert np.allclose(factor.solve(A @ x), x)
    assert abs(sp.triu(factor.lower, k=1)).sum() == 0.0
    assert np.allclose(factor.as_operator().matvec(A @ x), x)
    assert sorted(factor.perm) == list(range(30))


def test_cholesky_rejects_non_spd():
    """Test indefinite and singular matrices are rejected."""
    with pytest.raises(FactorizationError, match="matrix not SPD"):
        sparse_cholesky(sp.diags([1.0, -1.0, 2.0]))
    space = FunctionSpace(build_box_mesh(((0.0, 1.0),) * 3, (2, 2, 2)), "P1-scalar")
    with pytest.raises(FactorizationError, match="matrix not SPD"):
        sparse_cholesky(assemble_form(ScalarStiffness(), space, space))


def test_cholesky_dimension_check():
    """Test solve rejects right-hand sides of the wrong length."""
    factor = sparse_cholesky(sp.eye(4))
    with pytest.raises(DimensionError, match="cannot solve"):
        factor.solve(np.ones(3))


def test_generalized_eig():
    """Test S x = lambda N x for diagonal pencils."""
    S = np.diag([2.0, -3.0, 8.0])
    N = np.diag([1.0, 3.0, 2.0])
    assert np.allclose(dense_sym_generalized_eig(S, N), [-1.0, 2.0, 4.0])
    values, vectors = dense_sym_generalized_eig(S, N, vectors=True)
    assert np.allclose(vectors.T @ N @ vectors, np.eye(3))


def test_generalized_eig_errors():
    """Test size limit, non-SPD N and non-square input."""
    with pytest.raises(SizeLimitError, match="exceeds limit"):
        dense_sym_generalized_eig(np.eye(5), np.eye(5), limit=4)
    with pytest.raises(FactorizationError, match="N not SPD"):
        dense_sym_generalized_eig(np.eye(2), np.diag([1.0, -1.0]))
    with pytest.raises(ValueError, match="must be square"):
        dense_sym_eig(np.ones((2, 3)))


def test_dense_sym_eig_ascending():
    """Test eigenvalues come out ascending with orthonormal vectors."""
    values, vectors = dense_sym_eig(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(values, [1.0, 3.0])
    assert np.allclose(vectors.T @ vectors, np.eye(2))
