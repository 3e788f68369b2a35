"""CG on the singular Neumann system, pseudoinverse actions and their dense oracle."""
from typing import Literal, Optional, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator

from neumann_elasticity.domain.entities.solver import SingularSolveReport, StoppingRule
from neumann_elasticity.domain.krylov.cg import cg
from neumann_elasticity.domain.linalg.cholesky import CholeskyFactor
from neumann_elasticity.domain.linalg.eigen import DENSE_LIMIT, dense_sym_generalized_eig
from neumann_elasticity.domain.services.projectors import (
    orth_L2,
    orth_l2,
    project_P,
    project_Pt,
    project_Pz,
)
from neumann_elasticity.domain.services.rigid import RIGID_DIM, RigidBasis
from neumann_elasticity.infra.common import IncompatibleRhsError, SizeLimitError, get_logger

logger = get_logger(__name__)

RhsProjector = Literal["pz", "pt"]
SolutionProjector = Literal["pz", "p", "none"]
COMPATIBILITY_RTOL = 1e-8


def pz_am_preconditioner(factor: CholeskyFactor, basis_l2: RigidBasis) -> LinearOperator:
    """P_Z (A + M)^{-1} P_Z."""
    basis_l2.require("l2")
    n = factor.dim
    return LinearOperator(
        (n, n),
        matvec=lambda r: project_Pz(basis_l2, factor.solve(project_Pz(basis_l2, r))),
        dtype=float,
    )


def pseudo_solve(
    A,
    basis_l2: RigidBasis,
    b: np.ndarray,
    inner_factor: CholeskyFactor,
    stop: Optional[StoppingRule] = None,
    compat_rtol: float = COMPATIBILITY_RTOL,
) -> np.ndarray:
    """
    Euclidean pseudoinverse action: x with A x = b and Z^T x = 0.

    Runs CG preconditioned by P_Z (A+M)^{-1} P_Z on the projected right-hand side.

    Raises:
        IncompatibleRhsError: If |Z^T b| exceeds ``compat_rtol`` * |b|
    """
    stop = stop or StoppingRule(mode="relative", tolerance=1e-12, max_iterations=1000)
    b = np.asarray(b, dtype=float)
    norm_b = float(np.linalg.norm(b))
    if norm_b == 0.0:
        return np.zeros_like(b)

    defect = float(np.linalg.norm(basis_l2.Z.T @ b))
    if defect > compat_rtol * norm_b:
        raise IncompatibleRhsError(f"Right-hand side has kernel component {defect:.3e} (|b| = {norm_b:.3e})")

    report = cg(A, pz_am_preconditioner(inner_factor, basis_l2), project_Pz(basis_l2, b), None, stop)
    if not report.converged:
        logger.warning("Pseudo solve did not converge: %s", report.stop_reason)
    return project_Pz(basis_l2, report.solution)


def pseudo_preconditioner(
    A,
    basis_l2: RigidBasis,
    inner_factor: CholeskyFactor,
    rtol: float = 1e-12,
) -> LinearOperator:
    """pseudo_solve as a preconditioner; inputs are projected before the solve."""
    n = inner_factor.dim
    stop = StoppingRule(mode="relative", tolerance=rtol, max_iterations=1000)
    return LinearOperator(
        (n, n),
        matvec=lambda r: pseudo_solve(A, basis_l2, project_Pz(basis_l2, r), inner_factor, stop),
        dtype=float,
    )


def cg_singular(
    A,
    basis_l2: RigidBasis,
    basis_L2: RigidBasis,
    rhs_projector: RhsProjector,
    sol_projector: SolutionProjector,
    precond,
    b_raw: np.ndarray,
    stop: Optional[StoppingRule] = None,
    x0: Union[Literal["zero", "rhs"], np.ndarray] = "zero",
) -> SingularSolveReport:
    """
    CG on A u = b with explicit kernel handling.

    The right-hand side is made compatible by P_Z or P^T, CG runs from zero,
    from the projected right-hand side or from a given vector, and the chosen
    projector is applied to the result.
    """
    if rhs_projector == "pz":
        b = project_Pz(basis_l2, b_raw)
    elif rhs_projector == "pt":
        b = project_Pt(basis_L2, b_raw)
    else:
        raise ValueError(f"Unknown right-hand-side projector {rhs_projector!r}")

    if isinstance(x0, str):
        start = b.copy() if x0 == "rhs" else None
    else:
        start = np.asarray(x0, dtype=float)

    report = cg(A, precond, b, start, stop)

    if sol_projector == "pz":
        u = project_Pz(basis_l2, report.solution)
    elif sol_projector == "p":
        u = project_P(basis_L2, report.solution)
    elif sol_projector == "none":
        u = report.solution
    else:
        raise ValueError(f"Unknown solution projector {sol_projector!r}")

    return SingularSolveReport(
        solution=u,
        residual_history=report.residual_history,
        converged=report.converged,
        stop_reason=report.stop_reason,
        orth_l2=orth_l2(basis_l2, u),
        orth_L2=orth_L2(basis_L2, u),
    )


def m_pseudo_solve(
    A: sp.spmatrix,
    M: sp.spmatrix,
    basis_L2: RigidBasis,
    b: np.ndarray,
    limit: int = DENSE_LIMIT,
) -> np.ndarray:
    """
    Dense M-pseudoinverse: U Gamma^{-1} U^T P^T b over the nonzero generalized
    eigenpairs A U = M U Gamma with U^T M U = I.

    Raises:
        SizeLimitError: If the dimension exceeds ``limit``
    """
    n = A.shape[0]
    if n > limit:
        raise SizeLimitError(f"Dense pseudoinverse of size {n} exceeds limit {limit}")
    gamma, U = dense_sym_generalized_eig(_dense(A), _dense(M), vectors=True, limit=limit)
    U, gamma = U[:, RIGID_DIM:], gamma[RIGID_DIM:]
    rhs = project_Pt(basis_L2, b)
    return U @ ((U.T @ rhs) / gamma)


def _dense(matrix) -> np.ndarray:
    return matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix, dtype=float)
