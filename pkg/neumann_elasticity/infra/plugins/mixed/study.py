"""Taylor-Hood mixed studies over the Lame parameter lambda."""
import numpy as np

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.domain.formulations.mixed import (
    assemble_mixed_blocks,
    build_mixed_double,
    build_mixed_single,
    mixed_preconditioner,
    solve_mixed,
)
from neumann_elasticity.domain.plugins.base import LevelSolution, StudyPlugin, StudyProblem
from neumann_elasticity.domain.services.assembly import assemble_load
from neumann_elasticity.domain.services.function_space import Field
from neumann_elasticity.domain.services.manufactured import displacement_star
from neumann_elasticity.domain.services.projectors import project_Pt
from neumann_elasticity.domain.services.rigid import rigid_basis
from neumann_elasticity.infra.common import get_logger

logger = get_logger(__name__)


class MixedStudy(StudyPlugin):
    """
    Load f = u*, no traction. No closed-form solution exists, so only
    iterations and orthogonality are measured.
    """

    def __init__(self, plugin_id: str, single_saddle: bool):
        self._plugin_id = plugin_id
        self._single_saddle = single_saddle

    @property
    def id(self) -> str:
        return self._plugin_id

    def prepare(self, config: ExperimentConfig, finest_mesh: Mesh) -> StudyProblem:
        return StudyProblem()

    def solve_level(
        self,
        problem: StudyProblem,
        mesh: Mesh,
        config: ExperimentConfig,
        app_config: AppConfig,
        rng: np.random.Generator,
    ) -> LevelSolution:
        material = config.formulation.material
        blocks = assemble_mixed_blocks(mesh, material.mu)
        basis_L2 = rigid_basis(blocks.u_space, "L2", mass=blocks.M)
        b = assemble_load(blocks.u_space, displacement_star)

        if self._single_saddle:
            system = build_mixed_single(blocks.A2mu, blocks.Bdiv, blocks.C, basis_L2.W, material.lam, project_Pt(basis_L2, b))
        else:
            system = build_mixed_double(blocks.A2mu, blocks.Bdiv, blocks.C, basis_L2.W, material.lam, b)
        precond = mixed_preconditioner(blocks, with_multiplier=not self._single_saddle)

        report, parts = solve_mixed(system, precond, config.formulation.stop)
        logger.debug("Mixed %s, lam=%s: %d iterations", self._plugin_id, material.lam, report.iterations)
        return LevelSolution(
            field=Field(blocks.u_space, parts["u"]),
            ndof=blocks.u_space.dof_count,
            report=report,
            basis_L2=basis_L2,
            basis_l2=rigid_basis(blocks.u_space, "l2"),
        )
