"""Tests for CG on the singular system and the pseudoinverse actions."""
import numpy as np
import pytest

from neumann_elasticity.domain.entities.forms import ElasticStiffness, VectorMass
from neumann_elasticity.domain.entities.solver import StoppingRule
from neumann_elasticity.domain.entities.study import FormulationConfig
from neumann_elasticity.domain.formulations.singular_system import build_cg_singular
from neumann_elasticity.domain.krylov.singular import (
    cg_singular,
    m_pseudo_solve,
    pseudo_preconditioner,
    pseudo_solve,
    pz_am_preconditioner,
)
from neumann_elasticity.domain.linalg.cholesky import sparse_cholesky
from neumann_elasticity.domain.services.assembly import assemble_form
from neumann_elasticity.domain.services.function_space import FunctionSpace
from neumann_elasticity.domain.services.manufactured import example_box_params
from neumann_elasticity.domain.services.mesh_service import generate_mesh
from neumann_elasticity.domain.services.projectors import project_Pt, project_Pz
from neumann_elasticity.domain.services.rigid import rigid_basis
from neumann_elasticity.infra.common import ConfigError, IncompatibleRhsError, SizeLimitError

TIGHT = StoppingRule(tolerance=1e-12, max_iterations=1000)


class Setup:
    def __init__(self):
        mesh = generate_mesh(example_box_params((2, 2, 2)))
        self.space = FunctionSpace(mesh, "P1-vector3")
        self.A = assemble_form(ElasticStiffness(mu=1.0, lam=1.0), self.space, self.space)
        self.M = assemble_form(VectorMass(), self.space, self.space)
        self.L2 = rigid_basis(self.space, "L2", mass=self.M)
        self.l2 = rigid_basis(self.space, "l2")
        self.factor = sparse_cholesky(self.A + self.M)
        self.b = np.random.default_rng(2).standard_normal(self.space.dof_count)


@pytest.fixture(scope="module")
def setup():
    return Setup()


def _close(x, y, rtol):
    return np.linalg.norm(x - y) <= rtol * np.linalg.norm(y)


def test_pseudo_solve_matches_pseudoinverse(setup):
    """Test pseudo_solve agrees with the dense Moore-Penrose inverse."""
    b = project_Pz(setup.l2, setup.b)
    x = pseudo_solve(setup.A, setup.l2, b, setup.factor)
    assert _close(x, np.linalg.pinv(setup.A.toarray()) @ b, 1e-7)
    assert np.abs(setup.l2.Z.T @ x).max() < 1e-10


def test_pseudo_solve_rejects_kernel_rhs(setup):
    """Test a right-hand side inside the kernel is refused."""
    with pytest.raises(IncompatibleRhsError, match="kernel component"):
        pseudo_solve(setup.A, setup.l2, setup.l2.Z[:, 0], setup.factor)
    assert not np.any(pseudo_solve(setup.A, setup.l2, np.zeros(setup.space.dof_count), setup.factor))


def test_m_pseudo_solve(setup):
    """Test the M-pseudoinverse solves A x = P^T b with x L2-orthogonal to rigid motions."""
    x = m_pseudo_solve(setup.A, setup.M, setup.L2, setup.b)
    rhs = project_Pt(setup.L2, setup.b)
    assert _close(setup.A @ x, rhs, 1e-7)
    assert np.abs(setup.L2.W.T @ x).max() < 1e-10 * np.linalg.norm(x)
    with pytest.raises(SizeLimitError):
        m_pseudo_solve(setup.A, setup.M, setup.L2, setup.b, limit=10)


def test_cg_singular_consistent_projectors(setup):
    """Test (P^T, P) returns the M-pseudoinverse solution."""
    report = cg_singular(setup.A, setup.l2, setup.L2, "pt", "p", pz_am_preconditioner(setup.factor, setup.l2), setup.b, TIGHT)
    assert report.converged
    assert report.orth_L2 < 1e-10
    assert _close(report.solution, m_pseudo_solve(setup.A, setup.M, setup.L2, setup.b), 1e-6)


def test_cg_singular_euclidean_projectors(setup):
    """Test (P_Z, P_Z) returns the Euclidean pseudoinverse solution."""
    report = cg_singular(setup.A, setup.l2, setup.L2, "pz", "pz", pz_am_preconditioner(setup.factor, setup.l2), setup.b, TIGHT)
    assert report.converged
    assert report.orth_l2 < 1e-10
    b = project_Pz(setup.l2, setup.b)
    assert _close(report.solution, np.linalg.pinv(setup.A.toarray()) @ b, 1e-6)


def test_cg_singular_start_does_not_matter(setup):
    """Test starting from the projected rhs gives the same projected solution."""
    precond = pz_am_preconditioner(setup.factor, setup.l2)
    zero = cg_singular(setup.A, setup.l2, setup.L2, "pt", "p", precond, setup.b, TIGHT, x0="zero")
    rhs = cg_singular(setup.A, setup.l2, setup.L2, "pt", "p", precond, setup.b, TIGHT, x0="rhs")
    assert _close(rhs.solution, zero.solution, 1e-6)


def test_cg_singular_pseudo_preconditioner(setup):
    """Test the pseudo preconditioner converges in very few iterations."""
    precond = pseudo_preconditioner(setup.A, setup.l2, setup.factor)
    report = cg_singular(setup.A, setup.l2, setup.L2, "pz", "pz", precond, setup.b, StoppingRule(tolerance=1e-8))
    assert report.converged
    assert report.iterations <= 3


def test_cg_singular_unknown_projector(setup):
    """Test unknown projector names raise ValueError."""
    with pytest.raises(ValueError, match="right-hand-side projector"):
        cg_singular(setup.A, setup.l2, setup.L2, "q", "p", None, setup.b)
    with pytest.raises(ValueError, match="solution projector"):
        cg_singular(setup.A, setup.l2, setup.L2, "pz", "q", None, setup.b, StoppingRule(max_iterations=2))


def _formulation(**kwargs):
    return FormulationConfig(formulation="cg-singular", stop=TIGHT, **kwargs)


def test_build_cg_singular_preconditioners_agree(setup):
    """Test the pseudoinverse preconditioner gives the same solution as P_Z (A+M)^{-1} P_Z."""
    pzam = build_cg_singular(setup.A, setup.l2, setup.L2, setup.b, _formulation(precond="pzam"), setup.factor)
    pseudo = build_cg_singular(setup.A, setup.l2, setup.L2, setup.b, _formulation(precond="pseudo"), setup.factor)
    assert pzam.converged and pseudo.converged
    assert _close(pseudo.solution, pzam.solution, 1e-7)


def test_build_cg_singular_removes_rigid_perturbation(setup):
    """Test P^T makes a rigidly perturbed load give the unperturbed solution."""
    perturbed = setup.b + setup.L2.W @ np.array([1.0, -2.0, 0.5, 3.0, -1.0, 2.0])
    config = _formulation(rhs_projector="pt", sol_projector="p")
    clean = build_cg_singular(setup.A, setup.l2, setup.L2, setup.b, config, setup.factor)
    dirty = build_cg_singular(setup.A, setup.l2, setup.L2, perturbed, config, setup.factor)
    assert _close(dirty.solution, clean.solution, 1e-8)


def test_build_cg_singular_random_start(setup):
    """Test a random start converges to the zero-start solution and needs a generator."""
    config = _formulation(x0="random")
    with pytest.raises(ConfigError, match="needs a generator"):
        build_cg_singular(setup.A, setup.l2, setup.L2, setup.b, config, setup.factor)
    random = build_cg_singular(
        setup.A, setup.l2, setup.L2, setup.b, config, setup.factor, rng=np.random.default_rng(5)
    )
    zero = build_cg_singular(setup.A, setup.l2, setup.L2, setup.b, _formulation(), setup.factor)
    assert _close(random.solution, zero.solution, 1e-7)


def test_build_cg_singular_rejects_saddle_preconditioners(setup):
    """Test only pzam and pseudo precondition the singular system."""
    with pytest.raises(ConfigError, match="not available for cg-singular"):
        build_cg_singular(setup.A, setup.l2, setup.L2, setup.b, _formulation(precond="bm"), setup.factor)
