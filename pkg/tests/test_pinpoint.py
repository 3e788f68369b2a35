"""Tests for pinpointing strategies and symmetric elimination."""
import numpy as np
import pytest
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from neumann_elasticity.domain.entities.forms import ElasticStiffness, ScalarStiffness
from neumann_elasticity.domain.formulations import eliminate, pinpoint, pinpoint_dofs
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.linalg.sparse import is_symmetric
from neumann_elasticity.domain.services.assembly import assemble_form, assemble_load
from neumann_elasticity.domain.services.function_space import FunctionSpace, interpolate
from neumann_elasticity.domain.services.manufactured import example_box_params, make_case, unit_cube_params
from neumann_elasticity.domain.services.mesh_service import generate_mesh
from neumann_elasticity.infra.common import AssemblyError, DimensionError

STRATEGIES = ["3circ", "1tri", "3tri", "3dot"]


@pytest.fixture(scope="module", params=["example", "cube"])
def problem(request):
    params = example_box_params((2, 2, 2)) if request.param == "example" else unit_cube_params((2, 2, 2))
    mesh = generate_mesh(params)
    space = FunctionSpace(mesh, "P1-vector3")
    case = make_case(mesh)
    A = assemble_form(ElasticStiffness(mu=case.mu, lam=case.lam), space, space)
    b = assemble_load(space, case.body_force, case.traction)
    return space, A, b, interpolate(space, case.exact)


def test_dof_counts(problem):
    """Test each strategy constrains the expected number of dofs."""
    space = problem[0]
    assert len(pinpoint_dofs(space, "3circ")) == 6
    assert len(pinpoint_dofs(space, "1tri")) == 9
    assert len(pinpoint_dofs(space, "3dot")) == 9
    count = len(pinpoint_dofs(space, "3tri"))
    assert 9 <= count <= 27 and count % 3 == 0


def test_circle_pins_three_corners(problem):
    """Test 3circ uses three, two and one components at distinct vertices."""
    space = problem[0]
    nodes, counts = np.unique(pinpoint_dofs(space, "3circ") // 3, return_counts=True)
    assert sorted(counts) == [1, 2, 3]
    assert set(nodes) <= set(space.mesh.corner_vertices)


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_pinned_system_is_spd(problem, strategy):
    """Test elimination removes the kernel and keeps exact values at pinned dofs."""
    space, A, b, exact = problem
    system = pinpoint(A, b, strategy, exact)
    assert is_symmetric(system.matrix, 0.0)
    sparse_cholesky(system.matrix)
    u = spsolve(system.matrix.tocsc(), system.rhs)
    assert np.allclose(u[system.dofs], exact.coefficients[system.dofs])


def test_poisson_corner():
    """Test the scalar corner pin makes the Neumann Laplacian SPD."""
    space = FunctionSpace(generate_mesh(unit_cube_params((2, 2, 2))), "P1-scalar")
    K = assemble_form(ScalarStiffness(), space, space)
    dofs = pinpoint_dofs(space, "poisson-corner")
    assert len(dofs) == 1
    matrix, _ = eliminate(K, np.zeros(space.dof_count), dofs, np.zeros(1))
    sparse_cholesky(matrix)


def test_strategy_space_mismatch(problem):
    """Test strategies reject spaces of the wrong value dimension and unknown names."""
    space = problem[0]
    scalar = FunctionSpace(space.mesh, "P1-scalar")
    with pytest.raises(AssemblyError, match="scalar space"):
        pinpoint_dofs(space, "poisson-corner")
    with pytest.raises(AssemblyError, match="vector space"):
        pinpoint_dofs(scalar, "3circ")
    with pytest.raises(ValueError, match="Unknown pinpoint strategy"):
        pinpoint_dofs(space, "5dot")


def test_eliminate_moves_coupling_to_rhs():
    """Test elimination on a small matrix."""
    A = sp.csr_matrix(np.array([[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]]))
    matrix, rhs = eliminate(A, np.array([1.0, 1.0, 1.0]), np.array([0]), np.array([3.0]))
    assert np.allclose(matrix.toarray(), [[1.0, 0.0, 0.0], [0.0, 2.0, -1.0], [0.0, -1.0, 2.0]])
    assert np.allclose(rhs, [3.0, 4.0, 1.0])
    with pytest.raises(DimensionError, match="do not match"):
        eliminate(A, np.ones(2), np.array([0]), np.array([0.0]))
