"""SPD system of the natural norm: (A + W W^T) u = P^T b."""
from typing import Optional

import numpy as np
from scipy.sparse.linalg import LinearOperator

from neumann_elasticity.domain.entities.solver import SolveReport, StoppingRule
from neumann_elasticity.domain.krylov.cg import cg
from neumann_elasticity.domain.krylov.operators import low_rank_update
from neumann_elasticity.domain.linalg.cholesky import CholeskyFactor
from neumann_elasticity.domain.services.projectors import project_Pt
from neumann_elasticity.domain.services.rigid import RigidBasis
from neumann_elasticity.infra.common import DimensionError


def build_natural_norm(A, W: np.ndarray, AplusM_factor: CholeskyFactor) -> tuple[LinearOperator, LinearOperator]:
    """
    Matrix-free natural-norm operator and its (A + M)^{-1} preconditioner.

    The operator is never assembled; W W^T is dense.
    """
    if W.shape[0] != A.shape[0] or AplusM_factor.dim != A.shape[0]:
        raise DimensionError(
            f"A is {A.shape}, W has {W.shape[0]} rows, factor has dimension {AplusM_factor.dim}"
        )
    return low_rank_update(A, W), AplusM_factor.as_operator()


def natural_norm_rhs(basis_L2: RigidBasis, b: np.ndarray) -> np.ndarray:
    return project_Pt(basis_L2, b)


def solve_natural_norm(
    A,
    basis_L2: RigidBasis,
    AplusM_factor: CholeskyFactor,
    b_raw: np.ndarray,
    stop: Optional[StoppingRule] = None,
) -> SolveReport:
    """CG on the natural-norm system; the solution is L2-orthogonal to rigid motions without postprocessing."""
    operator, precond = build_natural_norm(A, basis_L2.W, AplusM_factor)
    return cg(operator, precond, natural_norm_rhs(basis_L2, b_raw), None, stop)
