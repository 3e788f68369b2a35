"""Tests for error norms and nodal interpolation."""
import numpy as np
import pytest

from neumann_elasticity.domain.services.convergence_service import convergence_rate
from neumann_elasticity.domain.services.function_space import Field, FunctionSpace, interpolate
from neumann_elasticity.domain.services.manufactured import (
    displacement_star,
    displacement_star_gradient,
    example_box_params,
)
from neumann_elasticity.domain.services.mesh_service import build_box_mesh, generate_mesh, mesh_sequence
from neumann_elasticity.domain.services.norms import error_norms, integrate_volume

BOUNDS = ((0.0, 1.0), (0.0, 2.0), (0.0, 1.0))
G = np.array([[1.0, 2.0, -0.5], [0.0, -1.0, 3.0], [0.5, 0.25, 2.0]])
C = np.array([0.3, -1.0, 2.0])


@pytest.fixture(scope="module")
def mesh():
    return build_box_mesh(BOUNDS, (3, 2, 2))


def _affine(x):
    return x @ G.T + C


def _affine_gradient(x):
    return np.broadcast_to(G, (x.shape[0], 3, 3))


@pytest.mark.parametrize("family", ["P1-vector3", "P2-vector3"])
def test_affine_field_is_reproduced(mesh, family):
    """Test the interpolant of an affine field has no error."""
    field = interpolate(FunctionSpace(mesh, family), _affine)
    norms = error_norms(field, _affine, _affine_gradient)
    assert norms.h1_error <= 1e-12


def test_quadratic_field_in_p2(mesh):
    """Test P2 reproduces quadratics while P1 does not."""

    def quadratic(x):
        return np.stack([x[:, 0] ** 2, x[:, 0] * x[:, 1], x[:, 2] ** 2 - x[:, 1]], axis=1)

    def quadratic_gradient(x):
        grad = np.zeros((x.shape[0], 3, 3))
        grad[:, 0, 0] = 2.0 * x[:, 0]
        grad[:, 1, 0] = x[:, 1]
        grad[:, 1, 1] = x[:, 0]
        grad[:, 2, 2] = 2.0 * x[:, 2]
        grad[:, 2, 1] = -1.0
        return grad

    p2 = error_norms(interpolate(FunctionSpace(mesh, "P2-vector3"), quadratic), quadratic, quadratic_gradient)
    p1 = error_norms(interpolate(FunctionSpace(mesh, "P1-vector3"), quadratic), quadratic, quadratic_gradient)
    assert p2.h1_error <= 1e-11
    assert p1.h1_error > 1e-3


def test_zero_field_against_constant(mesh):
    """Test the L2 error of zero against a constant is |c| sqrt(|domain|)."""
    space = FunctionSpace(mesh, "P1-vector3")
    zero = Field(space, np.zeros(space.dof_count))
    norms = error_norms(zero, lambda x: np.broadcast_to(C, x.shape), lambda x: np.zeros((x.shape[0], 3, 3)))
    assert norms.l2_error == pytest.approx(np.linalg.norm(C) * np.sqrt(2.0), rel=1e-12)
    assert norms.h1_seminorm_error == 0.0
    assert norms.h1_error == pytest.approx(norms.l2_error, rel=1e-12)


def test_scalar_zero_field_on_unit_cube():
    """Test a scalar constant c on the unit cube has L2 norm |c|."""
    space = FunctionSpace(build_box_mesh(((0.0, 1.0),) * 3, (2, 2, 2)), "P1-scalar")
    norms = error_norms(Field(space, np.zeros(space.dof_count)), lambda x: np.full(x.shape[0], -1.5))
    assert norms.l2_error == pytest.approx(1.5, rel=1e-12)
    assert norms.h1_seminorm_error == 0.0


def test_l2_error_matches_direct_quadrature(mesh):
    """Test the L2 error of the zero field equals the directly integrated norm of the exact function."""
    space = FunctionSpace(mesh, "P1-scalar")

    def exact(x):
        return x[:, 0] ** 2 + x[:, 1] * x[:, 2]

    assert error_norms(interpolate(space, exact), exact).l2_error > 0.0
    zero = Field(space, np.zeros(space.dof_count))
    assert error_norms(zero, exact).l2_error == pytest.approx(
        np.sqrt(float(integrate_volume(mesh, lambda x: exact(x) ** 2))), rel=1e-12
    )


def test_interpolation_rate_is_one():
    """Test the H1 interpolation error of the elastic displacement decays at first order."""
    errors = []
    for mesh in mesh_sequence(example_box_params((2, 2, 2)), 3):
        field = interpolate(FunctionSpace(mesh, "P1-vector3"), displacement_star)
        errors.append(error_norms(field, displacement_star, displacement_star_gradient).h1_error)
    assert errors[2] < errors[1] < errors[0]
    assert 0.9 <= convergence_rate(errors[1], errors[2]) <= 1.1


def test_without_gradient_only_l2_is_measured():
    """Test the H1 seminorm part is zero when no gradient is supplied."""
    mesh = generate_mesh(example_box_params((1, 1, 1)))
    field = interpolate(FunctionSpace(mesh, "P1-vector3"), displacement_star)
    norms = error_norms(field, displacement_star)
    assert norms.h1_seminorm_error == 0.0
    assert norms.h1_error == pytest.approx(norms.l2_error)
