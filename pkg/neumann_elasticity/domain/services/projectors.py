"""Kernel projectors built on rigid bases."""
import numpy as np
from scipy.sparse.linalg import LinearOperator

from neumann_elasticity.domain.services.rigid import RigidBasis
from neumann_elasticity.infra.common import DimensionError


def _check(basis: RigidBasis, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[0] != basis.Y.shape[0]:
        raise DimensionError(f"Vector of length {x.shape[0]} does not match basis of {basis.Y.shape[0]} dofs")
    return x


def project_Pz(basis: RigidBasis, x: np.ndarray) -> np.ndarray:
    """x - Z Z^T x for the Euclidean (l2) basis."""
    Z = basis.Z
    x = _check(basis, x)
    return x - Z @ (Z.T @ x)


def project_P(basis: RigidBasis, x: np.ndarray) -> np.ndarray:
    """x - Y W^T x: removes the L2 rigid component of a primal vector."""
    basis.require("L2")
    x = _check(basis, x)
    return x - basis.Y @ (basis.W.T @ x)


def project_Pt(basis: RigidBasis, b: np.ndarray) -> np.ndarray:
    """b - W Y^T b: makes a load vector annihilate rigid motions."""
    basis.require("L2")
    b = _check(basis, b)
    return b - basis.W @ (basis.Y.T @ b)


def projector_operator(kind: str, basis: RigidBasis) -> LinearOperator:
    """Projector as a linear operator; kind is one of pz, p, pt."""
    apply = {"pz": project_Pz, "p": project_P, "pt": project_Pt}[kind]
    n = basis.Y.shape[0]
    return LinearOperator((n, n), matvec=lambda x: apply(basis, x), dtype=float)


def orth_L2(basis: RigidBasis, u: np.ndarray) -> float:
    """max_k |(u_h, z_k)| for the L2 basis."""
    basis.require("L2")
    return float(np.abs(basis.W.T @ u).max())


def orth_l2(basis: RigidBasis, u: np.ndarray) -> float:
    """max_k |Z_k^T u| for the Euclidean basis."""
    return float(np.abs(basis.Z.T @ u).max())
