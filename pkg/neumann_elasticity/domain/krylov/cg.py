"""Preconditioned conjugate gradients."""
from typing import Optional

import numpy as np

from neumann_elasticity.domain.entities.solver import SolveReport, StoppingRule
from neumann_elasticity.domain.krylov.operators import as_operator, identity_operator
from neumann_elasticity.infra.common import get_logger

logger = get_logger(__name__)

NOT_SPSD = "operator not SPSD on Krylov space"
NOT_POSITIVE_PRECONDITIONER = "preconditioner not positive on residual"
NAN_BREAKDOWN = "breakdown: non-finite value"
CONVERGED = "converged"
MAX_ITERATIONS = "max iterations reached"


def cg(
    A,
    B,
    b: np.ndarray,
    x0: Optional[np.ndarray] = None,
    stop: Optional[StoppingRule] = None,
) -> SolveReport:
    """
    Solve A x = b with preconditioned CG.

    Residuals are measured in the preconditioner norm sqrt(r^T B r). A
    non-positive curvature p^T A p stops the iteration with a report instead
    of an exception.

    Args:
        A: Symmetric positive (semi-)definite operator
        B: Symmetric positive preconditioner, identity if None
        b: Right-hand side
        x0: Initial guess, zero if None
        stop: Stopping rule

    Returns:
        SolveReport whose history starts with the initial residual norm
    """
    stop = stop or StoppingRule()
    A = as_operator(A)
    b = np.asarray(b, dtype=float)
    B = identity_operator(b.shape[0]) if B is None else as_operator(B)

    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=float, copy=True)
    r = b - A.matvec(x)
    z = B.matvec(r)
    rz = float(r @ z)

    def report(reason: str, converged: bool) -> SolveReport:
        if not converged:
            logger.warning("CG stopped after %d iterations: %s", len(history) - 1, reason)
        return SolveReport(solution=x, residual_history=history, converged=converged, stop_reason=reason)

    history: list[float] = []
    if not np.isfinite(rz):
        history.append(float("nan"))
        return report(NAN_BREAKDOWN, False)
    if rz < 0.0:
        history.append(float("nan"))
        return report(NOT_POSITIVE_PRECONDITIONER, False)

    history.append(float(np.sqrt(rz)))
    threshold = stop.threshold(history[0])
    if history[0] <= threshold:
        return report(CONVERGED, True)

    p = z.copy()
    for _ in range(stop.max_iterations):
        q = A.matvec(p)
        curvature = float(p @ q)
        if not np.isfinite(curvature):
            return report(NAN_BREAKDOWN, False)
        if curvature <= 0.0:
            return report(NOT_SPSD, False)

        alpha = rz / curvature
        x += alpha * p
        r -= alpha * q
        z = B.matvec(r)
        rz_new = float(r @ z)
        if not np.isfinite(rz_new):
            return report(NAN_BREAKDOWN, False)
        if rz_new < 0.0:
            return report(NOT_POSITIVE_PRECONDITIONER, False)

        history.append(float(np.sqrt(rz_new)))
        logger.debug("CG iteration %d: residual %.3e", len(history) - 1, history[-1])
        if history[-1] <= threshold:
            return report(CONVERGED, True)

        p = z + (rz_new / rz) * p
        rz = rz_new

    return report(MAX_ITERATIONS, False)
