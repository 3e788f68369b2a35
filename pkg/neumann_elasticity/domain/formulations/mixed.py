"""Taylor-Hood mixed formulations for nearly incompressible elasticity."""
from typing import Optional

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict

from neumann_elasticity.domain.entities.forms import DivCoupling, EpsilonStiffness, ScalarMass, VectorMass
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.solver import SolveReport, StoppingRule
from neumann_elasticity.domain.formulations.blocks import BlockSystem, block_diagonal
from neumann_elasticity.domain.krylov.minres import minres
from neumann_elasticity.domain.krylov.operators import identity_operator, low_rank_update
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.services.assembly import assemble_form
from neumann_elasticity.domain.services.function_space import Family, FunctionSpace
from neumann_elasticity.infra.common import AssemblyError, DimensionError, get_logger

logger = get_logger(__name__)

MIXED_ATOL = 1e-8


def require_taylor_hood(u_space: FunctionSpace, p_space: FunctionSpace) -> None:
    """Displacement must be vector P2 and pressure scalar P1 on the same mesh."""
    if u_space.family is not Family.P2_VECTOR or p_space.family is not Family.P1_SCALAR:
        raise AssemblyError(
            f"Mixed formulations need the Taylor-Hood pair (P2-vector3, P1-scalar), "
            f"got ({u_space.family.value}, {p_space.family.value})"
        )
    if not u_space.shares_mesh(p_space):
        raise AssemblyError("Displacement and pressure spaces live on different meshes")


class MixedBlocks(BaseModel):
    """Assembled Taylor-Hood blocks on one mesh."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    u_space: FunctionSpace
    p_space: FunctionSpace
    A2mu: sp.csr_matrix
    Bdiv: sp.csr_matrix
    C: sp.csr_matrix
    M: sp.csr_matrix


def assemble_mixed_blocks(mesh: Mesh, mu: float) -> MixedBlocks:
    u_space = FunctionSpace(mesh, Family.P2_VECTOR)
    p_space = FunctionSpace(mesh, Family.P1_SCALAR)
    require_taylor_hood(u_space, p_space)
    blocks = MixedBlocks(
        u_space=u_space,
        p_space=p_space,
        A2mu=assemble_form(EpsilonStiffness(mu=mu), u_space, u_space),
        Bdiv=assemble_form(DivCoupling(), p_space, u_space),
        C=assemble_form(ScalarMass(), p_space, p_space),
        M=assemble_form(VectorMass(), u_space, u_space),
    )
    logger.debug("Taylor-Hood blocks: %d displacement dofs, %d pressure dofs", u_space.dof_count, p_space.dof_count)
    return blocks


def _pressure_block(C: sp.spmatrix, lam: Optional[float]) -> Optional[sp.spmatrix]:
    if lam is None:
        return None
    if lam <= 0:
        raise ValueError(f"lam must be positive or None (infinite), got {lam}")
    return -C / lam


def _check_shapes(A2mu, Bdiv, C, W) -> None:
    n, m = Bdiv.shape
    if A2mu.shape != (n, n) or C.shape != (m, m) or W.shape[0] != n:
        raise DimensionError(
            f"Inconsistent mixed blocks: A2mu {A2mu.shape}, Bdiv {Bdiv.shape}, C {C.shape}, W {W.shape}"
        )


def build_mixed_double(
    A2mu: sp.spmatrix,
    Bdiv: sp.spmatrix,
    C: sp.spmatrix,
    W: np.ndarray,
    lam: Optional[float],
    b: Optional[np.ndarray] = None,
) -> BlockSystem:
    """
    [[A2mu, Bdiv, W], [Bdiv^T, -C/lam, 0], [W^T, 0, 0]] with rhs [b, 0, 0].

    ``lam=None`` is the incompressible limit; the pressure block is omitted.
    """
    _check_shapes(A2mu, Bdiv, C, W)
    n, m = Bdiv.shape
    k = W.shape[1]
    blocks = {(0, 0): A2mu, (0, 1): Bdiv, (1, 0): Bdiv.T.tocsr(), (0, 2): W, (2, 0): W.T}
    pressure = _pressure_block(C, lam)
    if pressure is not None:
        blocks[(1, 1)] = pressure
    rhs = [np.zeros(n) if b is None else b, np.zeros(m), np.zeros(k)]
    return BlockSystem(["u", "p", "r"], [n, m, k], blocks, rhs)


def build_mixed_single(
    A2mu: sp.spmatrix,
    Bdiv: sp.spmatrix,
    C: sp.spmatrix,
    W: np.ndarray,
    lam: Optional[float],
    b_projected: Optional[np.ndarray] = None,
) -> BlockSystem:
    """
    [[A2mu + W W^T, Bdiv], [Bdiv^T, -C/lam]] with rhs [P^T b, 0].

    The caller projects the load; the top-left block is matrix-free.
    """
    _check_shapes(A2mu, Bdiv, C, W)
    n, m = Bdiv.shape
    blocks = {(0, 0): low_rank_update(A2mu, W), (0, 1): Bdiv, (1, 0): Bdiv.T.tocsr()}
    pressure = _pressure_block(C, lam)
    if pressure is not None:
        blocks[(1, 1)] = pressure
    rhs = [np.zeros(n) if b_projected is None else b_projected, np.zeros(m)]
    return BlockSystem(["u", "p"], [n, m], blocks, rhs)


def mixed_preconditioner(blocks: MixedBlocks, with_multiplier: bool, n_rigid: int = 6):
    """diag((A2mu + M)^{-1}, C^{-1}[, I])."""
    parts = [
        sparse_cholesky(blocks.A2mu + blocks.M).as_operator(),
        sparse_cholesky(blocks.C).as_operator(),
    ]
    if with_multiplier:
        parts.append(identity_operator(n_rigid))
    return block_diagonal(parts)


def solve_mixed(system: BlockSystem, precond, stop: Optional[StoppingRule] = None) -> tuple[SolveReport, dict[str, np.ndarray]]:
    """MinRes with an absolute tolerance of 1e-8 on the preconditioned residual unless ``stop`` says otherwise."""
    stop = stop or StoppingRule(mode="absolute", tolerance=MIXED_ATOL, max_iterations=1000)
    report = minres(system.operator, precond, system.rhs, stop)
    return report, system.split(report.solution)
