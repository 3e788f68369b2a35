"""Spectral bounds of preconditioned saddle point systems by dense generalized eigensolves."""
import numpy as np
from pydantic import BaseModel

from neumann_elasticity.domain.formulations.blocks import BlockSystem
from neumann_elasticity.domain.linalg.eigen import DENSE_LIMIT, dense_sym_generalized_eig
from neumann_elasticity.infra.common import DimensionError, SizeLimitError


class EigenBounds(BaseModel):
    """Endpoints of the negative and positive parts of the spectrum."""
    neg_min: float
    neg_max: float
    pos_min: float
    pos_max: float
    kappa: float
    """pos_max / pos_min."""


def eigen_bounds(system: BlockSystem, precond_matrix: np.ndarray, limit: int = DENSE_LIMIT) -> EigenBounds:
    """
    Solve S x = lambda N x with N the inverse of the preconditioner.

    kappa is pos_max / pos_min, the spread of the positive part.

    Raises:
        SizeLimitError: If the system is larger than ``limit``
    """
    if system.dim > limit:
        raise SizeLimitError(f"Eigen bounds of size {system.dim} exceed limit {limit}")
    if precond_matrix.shape != (system.dim, system.dim):
        raise DimensionError(f"Preconditioner matrix {precond_matrix.shape} does not match system of size {system.dim}")

    values = dense_sym_generalized_eig(system.to_dense(), precond_matrix, limit=limit)
    negative = values[values < 0.0]
    positive = values[values > 0.0]
    if negative.size == 0 or positive.size == 0:
        raise ValueError("Saddle point spectrum must have both signs")
    return EigenBounds(
        neg_min=float(negative.min()),
        neg_max=float(negative.max()),
        pos_min=float(positive.min()),
        pos_max=float(positive.max()),
        kappa=float(positive.max() / positive.min()),
    )
