"""Lagrange multiplier study: MinRes on the rigid-motion saddle system."""
import numpy as np

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.forms import H1Inner
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.domain.formulations.lagrange import build_lagrange, solve_lagrange
from neumann_elasticity.domain.formulations.preconditioners import precond_B1, precond_BE, precond_BM
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.plugins.base import LevelSolution, StudyPlugin, StudyProblem
from neumann_elasticity.domain.services.assembly import assemble_form
from neumann_elasticity.domain.services.function_space import Field
from neumann_elasticity.infra.common import ConfigError, get_logger
from neumann_elasticity.infra.plugins.elasticity.system import assemble_level, prepare_case

logger = get_logger(__name__)


class LagrangeStudy(StudyPlugin):
    """[[A, W], [W^T, 0]] with B1, BM or BE."""

    def __init__(self, plugin_id: str = "lagrange"):
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
        W = level.basis_L2.W
        precond_id = config.formulation.precond or "bm"
        if precond_id == "b1":
            H = assemble_form(H1Inner(), level.space, level.space)
            precond = precond_B1(sparse_cholesky(H))
        elif precond_id == "bm":
            precond = precond_BM(sparse_cholesky(level.A + level.M))
        elif precond_id == "be":
            precond = precond_BE(level.A, W, sparse_cholesky(level.A + level.M), app_config.inner_rtol)
        else:
            raise ConfigError(f"Preconditioner '{precond_id}' is not available for the Lagrange formulation")

        system = build_lagrange(level.A, W, level.b)
        report, parts = solve_lagrange(system, precond, config.formulation.stop)
        logger.debug("Lagrange multiplier: %s", np.array2string(parts["p"], precision=3))
        return LevelSolution(
            field=Field(level.space, parts["u"]),
            ndof=level.space.dof_count,
            report=report,
            basis_L2=level.basis_L2,
            basis_l2=level.basis_l2,
        )
