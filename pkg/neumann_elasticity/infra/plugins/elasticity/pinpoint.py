"""Elasticity with the kernel removed by pinpointing."""
import numpy as np

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.domain.formulations.pinpoint import pinpoint
from neumann_elasticity.domain.krylov.cg import cg
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.plugins.base import LevelSolution, StudyPlugin, StudyProblem
from neumann_elasticity.domain.services.function_space import Field, interpolate
from neumann_elasticity.infra.plugins.elasticity.system import assemble_level, prepare_case


class ElasticityPinpointStudy(StudyPlugin):
    """Exact displacement prescribed at a few boundary dofs, CG on the SPD remainder."""

    def __init__(self, plugin_id: str = "pinpoint-elasticity"):
        self._plugin_id = plugin_id

    @property
    def id(self) -> str:
        return self._plugin_id

    def prepare(self, config: ExperimentConfig, finest_mesh: Mesh) -> StudyProblem:
        return prepare_case(config, finest_mesh)

    def solve_level(
        self,
        problem: StudyProblem,
        mesh: Mesh,
        config: ExperimentConfig,
        app_config: AppConfig,
        rng: np.random.Generator,
    ) -> LevelSolution:
        level = assemble_level(mesh, problem.case)
        exact = interpolate(level.space, problem.exact)
        system = pinpoint(level.A, level.b, config.formulation.strategy, exact)
        factor = sparse_cholesky(system.matrix)

        x0 = None
        if config.formulation.x0 == "random":
            x0 = rng.standard_normal(level.space.dof_count)
        elif config.formulation.x0 == "rhs":
            x0 = system.rhs.copy()
        report = cg(system.matrix, factor.as_operator(), system.rhs, x0, config.formulation.stop)
        return LevelSolution(
            field=Field(level.space, report.solution),
            ndof=level.space.dof_count,
            report=report,
            basis_L2=level.basis_L2,
            basis_l2=level.basis_l2,
        )
