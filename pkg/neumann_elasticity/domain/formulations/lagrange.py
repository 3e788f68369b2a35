"""Lagrange multiplier formulation of the pure-Neumann problem."""
from typing import Optional

import numpy as np
import scipy.sparse as sp

from neumann_elasticity.domain.entities.solver import SolveReport, StoppingRule
from neumann_elasticity.domain.formulations.blocks import BlockSystem
from neumann_elasticity.domain.krylov.minres import minres
from neumann_elasticity.infra.common import DimensionError


def build_lagrange(A: sp.spmatrix, W: np.ndarray, b: Optional[np.ndarray] = None) -> BlockSystem:
    """[[A, W], [W^T, 0]] with right-hand side [b, 0]."""
    if W.shape[0] != A.shape[0]:
        raise DimensionError(f"W has {W.shape[0]} rows, A has {A.shape[0]}")
    n, k = W.shape
    rhs = [np.zeros(n) if b is None else b, np.zeros(k)]
    return BlockSystem(["u", "p"], [n, k], {(0, 0): A, (0, 1): W, (1, 0): W.T}, rhs)


def solve_lagrange(system: BlockSystem, precond, stop: Optional[StoppingRule] = None) -> tuple[SolveReport, dict[str, np.ndarray]]:
    """MinRes on the saddle system; returns the report and the split solution."""
    report = minres(system.operator, precond, system.rhs, stop)
    return report, system.split(report.solution)
