"""Tests for function spaces and the assembly of forms and loads."""
import numpy as np
import pytest

from neumann_elasticity.domain.entities.forms import (
    DivCoupling,
    ElasticStiffness,
    EpsilonStiffness,
    H1Inner,
    ScalarMass,
    ScalarStiffness,
    VectorMass,
)
from neumann_elasticity.domain.linalg.sparse import is_symmetric
from neumann_elasticity.domain.services.assembly import assemble_form, assemble_load
from neumann_elasticity.domain.services.function_space import Family, Field, FunctionSpace, interpolate
from neumann_elasticity.domain.services.mesh_service import build_box_mesh
from neumann_elasticity.infra.common import AssemblyError, DimensionError

BOUNDS = ((0.0, 1.0), (0.0, 2.0), (0.0, 1.0))
VOLUME = 2.0
AREA = 2 * (1 * 2 + 2 * 1 + 1 * 1)
G = np.array([[0.3, -0.1, 0.4], [0.2, 0.5, -0.7], [0.6, 0.1, -0.2]])


@pytest.fixture(scope="module")
def mesh():
    return build_box_mesh(BOUNDS, (2, 2, 2))


@pytest.fixture(scope="module", params=[Family.P1_VECTOR, Family.P2_VECTOR])
def vector_space(request, mesh):
    return FunctionSpace(mesh, request.param)


def _linear(space):
    return interpolate(space, lambda x: x @ G.T).coefficients


def test_space_sizes(mesh):
    """Test P1 has one node per vertex and P2 adds one node per edge."""
    p1 = FunctionSpace(mesh, "P1-vector3")
    p2 = FunctionSpace(mesh, "P2-vector3")
    assert p1.dof_count == 3 * mesh.n_vertices
    assert p2.dof_count == 3 * (mesh.n_vertices + len(mesh.edges))
    assert p2.cell_dofs.shape == (mesh.n_cells, 30)
    assert FunctionSpace(mesh, "P1-scalar").dof_count == mesh.n_vertices


def test_field_rejects_wrong_length(mesh):
    """Test a field needs exactly dof_count coefficients."""
    with pytest.raises(DimensionError, match="coefficients"):
        Field(FunctionSpace(mesh, "P1-scalar"), np.zeros(3))


def test_scalar_mass_and_stiffness(mesh):
    """Test scalar mass integrates constants and stiffness annihilates them."""
    space = FunctionSpace(mesh, "P1-scalar")
    M = assemble_form(ScalarMass(), space, space)
    K = assemble_form(ScalarStiffness(), space, space)
    ones = np.ones(space.dof_count)
    assert ones @ M @ ones == pytest.approx(VOLUME, rel=1e-12)
    assert np.abs(K @ ones).max() < 1e-12
    assert is_symmetric(M, 0.0) and is_symmetric(K, 0.0)


def test_scalar_stiffness_energy(mesh):
    """Test grad energy of a linear function is exact."""
    space = FunctionSpace(mesh, "P1-scalar")
    K = assemble_form(ScalarStiffness(), space, space)
    g = np.array([1.0, -2.0, 0.5])
    u = interpolate(space, lambda x: x @ g).coefficients
    assert u @ K @ u == pytest.approx(VOLUME * g @ g, rel=1e-12)


def test_vector_mass_volume(vector_space):
    """Test vector mass integrates constant vector fields."""
    M = assemble_form(VectorMass(), vector_space, vector_space)
    e = np.zeros(vector_space.dof_count)
    e[0::3] = 1.0
    assert e @ M @ e == pytest.approx(VOLUME, rel=1e-12)
    assert is_symmetric(M, 0.0)


def test_elastic_energy_of_linear_field(vector_space):
    """Test elastic energy of u = Gx equals vol (2 mu |eps|^2 + lam tr^2)."""
    mu, lam = 3.0, 5.0
    A = assemble_form(ElasticStiffness(mu=mu, lam=lam), vector_space, vector_space)
    u = _linear(vector_space)
    eps = 0.5 * (G + G.T)
    expected = VOLUME * (2.0 * mu * np.sum(eps * eps) + lam * np.trace(G) ** 2)
    assert u @ A @ u == pytest.approx(expected, rel=1e-11)
    assert is_symmetric(A, 0.0)


def test_epsilon_stiffness_drops_divergence(vector_space):
    """Test the epsilon form has no divergence term."""
    A = assemble_form(EpsilonStiffness(mu=2.0), vector_space, vector_space)
    u = _linear(vector_space)
    eps = 0.5 * (G + G.T)
    assert u @ A @ u == pytest.approx(VOLUME * 4.0 * np.sum(eps * eps), rel=1e-11)


def test_elastic_stiffness_kernel(vector_space):
    """Test infinitesimal rigid motions lie in the kernel of the elastic form."""
    A = assemble_form(ElasticStiffness(mu=1.0, lam=1.0), vector_space, vector_space)
    skew = np.array([[0.0, -0.3, 0.2], [0.3, 0.0, -0.1], [-0.2, 0.1, 0.0]])
    shift = np.array([1.0, -1.0, 2.0])
    u = interpolate(vector_space, lambda x: x @ skew.T + shift).coefficients
    assert np.abs(A @ u).max() < 1e-10


def test_div_coupling(mesh):
    """Test (p, div u) for constant p and linear u."""
    u_space = FunctionSpace(mesh, "P2-vector3")
    p_space = FunctionSpace(mesh, "P1-scalar")
    B = assemble_form(DivCoupling(), p_space, u_space)
    assert B.shape == (u_space.dof_count, p_space.dof_count)
    u = _linear(u_space)
    assert u @ (B @ np.ones(p_space.dof_count)) == pytest.approx(VOLUME * np.trace(G), rel=1e-11)


def test_h1_inner_constants(mesh):
    """Test the H1 form reduces to the mass on constants."""
    space = FunctionSpace(mesh, "P1-scalar")
    H = assemble_form(H1Inner(), space, space)
    ones = np.ones(space.dof_count)
    assert ones @ H @ ones == pytest.approx(VOLUME, rel=1e-12)


def test_space_mismatch(mesh):
    """Test forms reject incompatible spaces."""
    scalar = FunctionSpace(mesh, "P1-scalar")
    vector = FunctionSpace(mesh, "P1-vector3")
    with pytest.raises(AssemblyError, match="needs a scalar space"):
        assemble_form(ScalarMass(), vector, vector)
    with pytest.raises(AssemblyError, match="scalar trial space"):
        assemble_form(DivCoupling(), vector, scalar)
    other = FunctionSpace(build_box_mesh(BOUNDS, (1, 1, 1)), "P1-vector3")
    with pytest.raises(AssemblyError, match="different meshes"):
        assemble_form(VectorMass(), vector, other)


def test_volume_load(vector_space):
    """Test a constant body force loads the total volume."""
    b = assemble_load(vector_space, lambda x: np.tile([1.0, 0.0, 0.0], (len(x), 1)))
    assert b[0::3].sum() == pytest.approx(VOLUME, rel=1e-12)
    assert np.abs(b[1::3]).sum() < 1e-14


def test_boundary_load(vector_space):
    """Test traction loads: normals integrate to zero, constants to the area."""
    b = assemble_load(vector_space, None, lambda x, n: n)
    assert abs(b[0::3].sum()) < 1e-12
    b = assemble_load(vector_space, None, lambda x, n: np.tile([0.0, 0.0, 1.0], (len(x), 1)))
    assert b[2::3].sum() == pytest.approx(AREA, rel=1e-12)
