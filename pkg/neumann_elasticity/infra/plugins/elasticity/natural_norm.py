"""Natural-norm study: CG on A + W W^T with (A + M)^{-1}."""
import numpy as np

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.domain.formulations.natural_norm import solve_natural_norm
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.plugins.base import LevelSolution, StudyPlugin, StudyProblem
from neumann_elasticity.domain.services.function_space import Field
from neumann_elasticity.infra.plugins.elasticity.system import assemble_level, prepare_case


class NaturalNormStudy(StudyPlugin):

    def __init__(self, plugin_id: str = "natural-norm"):
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
        report = solve_natural_norm(
            level.A, level.basis_L2, sparse_cholesky(level.A + level.M), level.b, config.formulation.stop
        )
        return LevelSolution(
            field=Field(level.space, report.solution),
            ndof=level.space.dof_count,
            report=report,
            basis_L2=level.basis_L2,
            basis_l2=level.basis_l2,
        )
