"""Linear systems and preconditioners of the pure-Neumann formulations."""
from neumann_elasticity.domain.formulations.blocks import BlockSystem, block_diagonal
from neumann_elasticity.domain.formulations.eigen_bounds import EigenBounds, eigen_bounds
from neumann_elasticity.domain.formulations.lagrange import build_lagrange, solve_lagrange
from neumann_elasticity.domain.formulations.mixed import (
    MixedBlocks,
    assemble_mixed_blocks,
    build_mixed_double,
    build_mixed_single,
    mixed_preconditioner,
    require_taylor_hood,
    solve_mixed,
)
from neumann_elasticity.domain.formulations.natural_norm import (
    build_natural_norm,
    natural_norm_rhs,
    solve_natural_norm,
)
from neumann_elasticity.domain.formulations.pinpoint import PinpointedSystem, eliminate, pinpoint, pinpoint_dofs
from neumann_elasticity.domain.formulations.preconditioners import (
    natural_inverse,
    precond_B1,
    precond_BE,
    precond_BM,
    riesz_matrix_BE,
    riesz_matrix_BM,
)
from neumann_elasticity.domain.formulations.singular_system import build_cg_singular

__all__ = [
    "BlockSystem",
    "block_diagonal",
    "EigenBounds",
    "eigen_bounds",
    "build_lagrange",
    "solve_lagrange",
    "MixedBlocks",
    "assemble_mixed_blocks",
    "build_mixed_double",
    "build_mixed_single",
    "mixed_preconditioner",
    "require_taylor_hood",
    "solve_mixed",
    "build_natural_norm",
    "natural_norm_rhs",
    "solve_natural_norm",
    "PinpointedSystem",
    "eliminate",
    "pinpoint",
    "pinpoint_dofs",
    "natural_inverse",
    "precond_B1",
    "precond_BE",
    "precond_BM",
    "riesz_matrix_BE",
    "riesz_matrix_BM",
    "build_cg_singular",
]
