"""Tests for the hand-written CG and MinRes iterations."""
import numpy as np
import pytest
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from neumann_elasticity.domain.entities.solver import StoppingRule
from neumann_elasticity.domain.krylov.cg import CONVERGED, MAX_ITERATIONS, NOT_POSITIVE_PRECONDITIONER, NOT_SPSD, cg
from neumann_elasticity.domain.krylov.minres import minres
from neumann_elasticity.domain.krylov.operators import identity_operator, linearity_defect, low_rank_update


@pytest.fixture
def spd():
    n = 40
    return sp.diags([-np.ones(n - 1), 2.5 * np.ones(n), -np.ones(n - 1)], [-1, 0, 1], format="csr")


@pytest.fixture
def saddle():
    rng = np.random.default_rng(7)
    A = np.diag(rng.uniform(1.0, 3.0, 12))
    B = rng.standard_normal((12, 3))
    return np.block([[A, B], [B.T, np.zeros((3, 3))]])


def test_cg_matches_direct_solve(spd):
    """Test CG reaches the direct solution and records a history per iteration."""
    b = np.linspace(-1.0, 1.0, spd.shape[0])
    report = cg(spd, None, b, stop=StoppingRule(tolerance=1e-12))
    assert report.converged
    assert report.stop_reason == CONVERGED
    assert np.allclose(report.solution, spsolve(spd.tocsc(), b), atol=1e-9)
    assert report.iterations == len(report.residual_history) - 1
    assert report.iterations <= spd.shape[0]


def test_cg_exact_preconditioner_converges_in_one_step(spd):
    """Test CG with the exact inverse as preconditioner."""
    inverse = np.linalg.inv(spd.toarray())
    b = np.ones(spd.shape[0])
    report = cg(spd, inverse, b, stop=StoppingRule(tolerance=1e-10))
    assert report.converged
    assert report.iterations == 1


def test_cg_absolute_and_initial_convergence(spd):
    """Test an absolute rule and a zero right-hand side."""
    report = cg(spd, None, np.zeros(spd.shape[0]))
    assert report.converged and report.iterations == 0
    report = cg(spd, None, np.ones(spd.shape[0]), stop=StoppingRule(mode="absolute", tolerance=1e-9))
    assert report.converged
    assert report.residual_history[-1] <= 1e-9


def test_cg_max_iterations(spd):
    """Test the iteration cap stops CG without raising."""
    report = cg(spd, None, np.ones(spd.shape[0]), stop=StoppingRule(tolerance=1e-14, max_iterations=2))
    assert not report.converged
    assert report.stop_reason == MAX_ITERATIONS
    assert report.iterations == 2


def test_cg_reports_non_positive_curvature():
    """Test an indefinite operator is reported instead of raising."""
    report = cg(np.diag([1.0, -1.0]), None, np.array([1.0, 1.0]))
    assert not report.converged
    assert report.stop_reason == NOT_SPSD


def test_cg_reports_negative_preconditioner(spd):
    """Test a negative definite preconditioner is reported."""
    report = cg(spd, -sp.eye(spd.shape[0]), np.ones(spd.shape[0]))
    assert not report.converged
    assert report.stop_reason == NOT_POSITIVE_PRECONDITIONER


def test_minres_solves_saddle_point(saddle):
    """Test MinRes on an indefinite system with a non-increasing history."""
    b = np.arange(saddle.shape[0], dtype=float)
    report = minres(saddle, None, b, StoppingRule(tolerance=1e-12))
    assert report.converged
    assert np.allclose(report.solution, np.linalg.solve(saddle, b), atol=1e-8)
    history = np.array(report.residual_history)
    assert np.all(np.diff(history) <= 1e-12 * history[0])


def test_minres_with_spd_preconditioner(saddle):
    """Test a block diagonal SPD preconditioner keeps the solution."""
    A = saddle[:12, :12]
    B = saddle[:12, 12:]
    precond = np.zeros_like(saddle)
    precond[:12, :12] = np.linalg.inv(A)
    precond[12:, 12:] = np.linalg.inv(B.T @ np.linalg.inv(A) @ B)
    b = np.ones(saddle.shape[0])
    report = minres(saddle, precond, b, StoppingRule(tolerance=1e-12))
    assert report.converged
    # exact Schur complement preconditioning leaves three distinct eigenvalues
    assert report.iterations <= 4
    assert np.allclose(report.solution, np.linalg.solve(saddle, b), atol=1e-8)


def test_minres_rejects_indefinite_preconditioner(saddle):
    """Test an indefinite preconditioner stops MinRes with a report."""
    precond = np.diag(np.r_[np.ones(12), -np.ones(3)])
    b = np.r_[np.zeros(12), np.ones(3)]
    report = minres(saddle, precond, b)
    assert not report.converged
    assert report.stop_reason == NOT_POSITIVE_PRECONDITIONER


def test_operators_are_linear():
    """Test the operator helpers are linear maps."""
    rng = np.random.default_rng(1)
    A = sp.random(10, 10, density=0.4, random_state=1) + sp.eye(10)
    W = rng.standard_normal((10, 2))
    op = low_rank_update(A, W)
    x = rng.standard_normal(10)
    assert np.allclose(op.matvec(x), A @ x + W @ (W.T @ x))
    assert linearity_defect(op) < 1e-13
    assert np.array_equal(identity_operator(10).matvec(x), x)
