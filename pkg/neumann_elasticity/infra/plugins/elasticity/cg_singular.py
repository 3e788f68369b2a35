"""CG on the singular system with selectable kernel projectors."""
import numpy as np

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.domain.formulations.singular_system import build_cg_singular
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.plugins.base import LevelSolution, StudyPlugin, StudyProblem
from neumann_elasticity.domain.services.function_space import Field
from neumann_elasticity.infra.plugins.elasticity.system import assemble_level, prepare_case


class CgSingularStudy(StudyPlugin):
    """Right-hand side made compatible by P_Z or P^T, solution projected by P_Z, P or not at all."""

    def __init__(self, plugin_id: str = "cg-singular"):
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
        report = build_cg_singular(
            level.A,
            level.basis_l2,
            level.basis_L2,
            level.b,
            config.formulation,
            sparse_cholesky(level.A + level.M),
            app_config.inner_rtol,
            rng,
        )
        return LevelSolution(
            field=Field(level.space, report.solution),
            ndof=level.space.dof_count,
            report=report,
            basis_L2=level.basis_L2,
            basis_l2=level.basis_l2,
        )
