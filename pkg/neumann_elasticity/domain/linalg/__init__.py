"""Sparse and dense linear algebra."""
from neumann_elasticity.domain.linalg.sparse import assemble_csr, canonical_csr, is_symmetric
from neumann_elasticity.domain.linalg.cholesky import CholeskyFactor, sparse_cholesky, solve_factor
from neumann_elasticity.domain.linalg.eigen import dense_sym_eig, dense_sym_generalized_eig

__all__ = [
    "assemble_csr",
    "canonical_csr",
    "is_symmetric",
    "CholeskyFactor",
    "sparse_cholesky",
    "solve_factor",
    "dense_sym_eig",
    "dense_sym_generalized_eig",
]
