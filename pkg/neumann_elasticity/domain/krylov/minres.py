"""Preconditioned MinRes for symmetric indefinite systems."""
from typing import Optional

import numpy as np

from neumann_elasticity.domain.entities.solver import SolveReport, StoppingRule
from neumann_elasticity.domain.krylov.cg import CONVERGED, MAX_ITERATIONS, NAN_BREAKDOWN, NOT_POSITIVE_PRECONDITIONER
from neumann_elasticity.domain.krylov.operators import as_operator, identity_operator
from neumann_elasticity.infra.common import get_logger

logger = get_logger(__name__)

LANCZOS_BREAKDOWN = "breakdown: singular tridiagonal system"


def minres(
    A,
    B,
    b: np.ndarray,
    stop: Optional[StoppingRule] = None,
    x0: Optional[np.ndarray] = None,
) -> SolveReport:
    """
    Solve A x = b with MinRes preconditioned by the SPD operator B.

    The recorded history is |eta_j|, the B-norm of the residual, which is
    non-increasing by construction.
    """
    stop = stop or StoppingRule()
    A = as_operator(A)
    b = np.asarray(b, dtype=float)
    B = identity_operator(b.shape[0]) if B is None else as_operator(B)

    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=float, copy=True)
    history: list[float] = []

    def report(reason: str, converged: bool) -> SolveReport:
        if not converged:
            logger.warning("MinRes stopped after %d iterations: %s", max(len(history) - 1, 0), reason)
        return SolveReport(solution=x, residual_history=history, converged=converged, stop_reason=reason)

    v_old = np.zeros_like(b)
    v = b - A.matvec(x)
    z = B.matvec(v)
    gamma_sq = float(z @ v)
    if not np.isfinite(gamma_sq) or gamma_sq < 0.0:
        history.append(float("nan"))
        return report(NOT_POSITIVE_PRECONDITIONER if np.isfinite(gamma_sq) else NAN_BREAKDOWN, False)

    gamma = float(np.sqrt(gamma_sq))
    gamma_old = 1.0
    eta = gamma
    history.append(gamma)
    threshold = stop.threshold(gamma)
    if gamma <= threshold:
        return report(CONVERGED, True)

    c_old, c = 1.0, 1.0
    s_old, s = 0.0, 0.0
    w_old = np.zeros_like(b)
    w = np.zeros_like(b)

    for _ in range(stop.max_iterations):
        z = z / gamma
        Az = A.matvec(z)
        delta = float(z @ Az)
        v_new = Az - (delta / gamma) * v - (gamma / gamma_old) * v_old
        z_new = B.matvec(v_new)
        gamma_new_sq = float(z_new @ v_new)
        if not np.isfinite(gamma_new_sq):
            return report(NAN_BREAKDOWN, False)
        if gamma_new_sq < 0.0:
            return report(NOT_POSITIVE_PRECONDITIONER, False)
        gamma_new = float(np.sqrt(gamma_new_sq))

        alpha0 = c * delta - c_old * s * gamma
        alpha1 = float(np.hypot(alpha0, gamma_new))
        alpha2 = s * delta + c_old * c * gamma
        alpha3 = s_old * gamma
        if alpha1 == 0.0:
            return report(LANCZOS_BREAKDOWN, False)

        c_new = alpha0 / alpha1
        s_new = gamma_new / alpha1
        w_new = (z - alpha3 * w_old - alpha2 * w) / alpha1
        x += c_new * eta * w_new
        eta = -s_new * eta

        history.append(abs(eta))
        logger.debug("MinRes iteration %d: residual %.3e", len(history) - 1, history[-1])
        if history[-1] <= threshold:
            return report(CONVERGED, True)
        if gamma_new == 0.0:
            return report(LANCZOS_BREAKDOWN, False)

        v_old, v = v, v_new
        z = z_new
        gamma_old, gamma = gamma, gamma_new
        c_old, c = c, c_new
        s_old, s = s, s_new
        w_old, w = w, w_new

    return report(MAX_ITERATIONS, False)
