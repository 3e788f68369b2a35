"""Per-level assembly shared by the P1 elasticity studies."""
import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict

from neumann_elasticity.domain.entities.forms import ElasticStiffness, VectorMass
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.domain.plugins.base import StudyProblem
from neumann_elasticity.domain.services.assembly import assemble_form, assemble_load
from neumann_elasticity.domain.services.function_space import Family, FunctionSpace
from neumann_elasticity.domain.services.manufactured import ManufacturedCase, make_case
from neumann_elasticity.domain.services.rigid import RigidBasis, rigid_basis
from neumann_elasticity.infra.common import get_logger

logger = get_logger(__name__)


class ElasticLevel(BaseModel):
    """Blocks, load and rigid bases of the P1 elasticity problem on one mesh."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    space: FunctionSpace
    A: sp.csr_matrix
    M: sp.csr_matrix
    b: np.ndarray
    basis_L2: RigidBasis
    basis_l2: RigidBasis


def prepare_case(config: ExperimentConfig, finest_mesh: Mesh) -> StudyProblem:
    """Manufactured case with rigid coefficients frozen on the finest mesh."""
    material = config.formulation.material
    case = make_case(finest_mesh, config.formulation.perturb, mu=material.mu, lam=material.lam)
    return StudyProblem(case=case, exact=case.exact, exact_gradient=case.exact_gradient)


def assemble_level(mesh: Mesh, case: ManufacturedCase) -> ElasticLevel:
    space = FunctionSpace(mesh, Family.P1_VECTOR)
    A = assemble_form(ElasticStiffness(mu=case.mu, lam=case.lam), space, space)
    M = assemble_form(VectorMass(), space, space)
    b = assemble_load(space, case.body_force, case.traction)
    level = ElasticLevel(
        space=space,
        A=A,
        M=M,
        b=b,
        basis_L2=rigid_basis(space, "L2", mass=M),
        basis_l2=rigid_basis(space, "l2"),
    )
    logger.debug("Assembled elasticity level: %d dofs, %d nonzeros", space.dof_count, A.nnz)
    return level
