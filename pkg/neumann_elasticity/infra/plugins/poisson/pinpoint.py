"""Neumann Poisson problem with one corner value prescribed."""
import numpy as np

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.forms import ScalarStiffness
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.domain.formulations.pinpoint import pinpoint
from neumann_elasticity.domain.krylov.cg import cg
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.plugins.base import LevelSolution, StudyPlugin, StudyProblem
from neumann_elasticity.domain.services.assembly import assemble_form, assemble_load
from neumann_elasticity.domain.services.function_space import Family, Field, FunctionSpace, interpolate
from neumann_elasticity.domain.services.manufactured import PoissonCase


class PoissonPinpointStudy(StudyPlugin):
    """P1 Poisson on the unit cube, pinned at the lower corner."""

    def __init__(self, plugin_id: str = "pinpoint-poisson"):
        self._plugin_id = plugin_id

    @property
    def id(self) -> str:
        return self._plugin_id

    def prepare(self, config: ExperimentConfig, finest_mesh: Mesh) -> StudyProblem:
        case = PoissonCase()
        return StudyProblem(case=case, exact=case.exact, exact_gradient=case.exact_gradient)

    def solve_level(
        self,
        problem: StudyProblem,
        mesh: Mesh,
        config: ExperimentConfig,
        app_config: AppConfig,
        rng: np.random.Generator,
    ) -> LevelSolution:
        space = FunctionSpace(mesh, Family.P1_SCALAR)
        A = assemble_form(ScalarStiffness(), space, space)
        b = assemble_load(space, problem.case.source)
        system = pinpoint(A, b, "poisson-corner", interpolate(space, problem.exact))

        x0 = rng.standard_normal(space.dof_count) if config.formulation.x0 == "random" else None
        report = cg(system.matrix, sparse_cholesky(system.matrix).as_operator(), system.rhs, x0, config.formulation.stop)
        return LevelSolution(field=Field(space, report.solution), ndof=space.dof_count, report=report)
