"""Errors and orthogonality residuals of a level solution."""
from typing import Optional

from pydantic import BaseModel

from neumann_elasticity.domain.plugins.base import LevelSolution, StudyProblem
from neumann_elasticity.domain.services.norms import error_norms
from neumann_elasticity.domain.services.projectors import orth_L2, orth_l2


class LevelMeasures(BaseModel):
    h1_error: Optional[float] = None
    orth_L2: Optional[float] = None
    orth_l2: Optional[float] = None


def measure_level(problem: StudyProblem, solution: LevelSolution) -> LevelMeasures:
    """H1 error against the exact solution, if known, and max_k |(u_h, z_k)| in both products."""
    measures = LevelMeasures()
    if problem.exact is not None:
        measures.h1_error = error_norms(solution.field, problem.exact, problem.exact_gradient).h1_error
    u = solution.field.coefficients
    if solution.basis_L2 is not None:
        measures.orth_L2 = orth_L2(solution.basis_L2, u)
    if solution.basis_l2 is not None:
        measures.orth_l2 = orth_l2(solution.basis_l2, u)
    return measures
