"""Krylov solvers and the singular-system variants."""
from neumann_elasticity.domain.krylov.cg import cg
from neumann_elasticity.domain.krylov.minres import minres
from neumann_elasticity.domain.krylov.operators import identity_operator, linearity_defect, low_rank_update
from neumann_elasticity.domain.krylov.singular import (
    cg_singular,
    m_pseudo_solve,
    pseudo_preconditioner,
    pseudo_solve,
    pz_am_preconditioner,
)

__all__ = [
    "cg",
    "minres",
    "identity_operator",
    "linearity_defect",
    "low_rank_update",
    "cg_singular",
    "m_pseudo_solve",
    "pseudo_preconditioner",
    "pseudo_solve",
    "pz_am_preconditioner",
]
