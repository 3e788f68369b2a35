"""The singular system A u = b solved by CG with explicit kernel projectors."""
from typing import Optional

import numpy as np

from neumann_elasticity.domain.entities.solver import SingularSolveReport
from neumann_elasticity.domain.entities.study import FormulationConfig
from neumann_elasticity.domain.krylov.singular import cg_singular, pseudo_preconditioner, pz_am_preconditioner
from neumann_elasticity.domain.linalg.cholesky import CholeskyFactor
from neumann_elasticity.domain.services.projectors import project_Pz
from neumann_elasticity.domain.services.rigid import RigidBasis
from neumann_elasticity.infra.common import ConfigError


def build_cg_singular(
    A,
    basis_l2: RigidBasis,
    basis_L2: RigidBasis,
    b_raw: np.ndarray,
    config: FormulationConfig,
    AplusM_factor: CholeskyFactor,
    inner_rtol: float = 1e-12,
    rng: Optional[np.random.Generator] = None,
) -> SingularSolveReport:
    """
    Wire assembled blocks and both rigid bases into cg_singular.

    ``pzam`` preconditions with P_Z (A+M)^{-1} P_Z, ``pseudo`` with the
    Euclidean pseudoinverse itself. A random start is drawn from ``rng`` and
    made l2-orthogonal to the rigid motions.

    Raises:
        ConfigError: On a preconditioner other than pzam or pseudo, or a
            random start without a generator
    """
    precond_id = config.precond or "pzam"
    if precond_id == "pzam":
        precond = pz_am_preconditioner(AplusM_factor, basis_l2)
    elif precond_id == "pseudo":
        precond = pseudo_preconditioner(A, basis_l2, AplusM_factor, inner_rtol)
    else:
        raise ConfigError(f"Preconditioner '{precond_id}' is not available for cg-singular")

    x0 = config.x0
    if x0 == "random":
        if rng is None:
            raise ConfigError("A random initial guess needs a generator")
        x0 = project_Pz(basis_l2, rng.standard_normal(A.shape[0]))

    return cg_singular(
        A,
        basis_l2,
        basis_L2,
        config.rhs_projector,
        config.sol_projector,
        precond,
        b_raw,
        config.stop,
        x0,
    )
