"""Closed-form test problems: the rotated elastic box and the Neumann Poisson cube."""
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from neumann_elasticity.domain.entities.mesh import BoxMeshParams, Grading, Mesh, RigidTransform
from neumann_elasticity.domain.services.norms import integrate_volume
from neumann_elasticity.domain.services.rigid import RIGID_DIM, RigidFrame, l2_frame
from neumann_elasticity.infra.common import get_logger

logger = get_logger(__name__)

EXAMPLE_BOUNDS = ((-0.25, 0.25), (-0.5, 0.5), (-0.125, 0.125))
EXAMPLE_ANGLES = (np.pi / 2, np.pi / 4, np.pi / 5)
EXAMPLE_TRANSLATION = (0.1, 0.2, 0.3)
EXAMPLE_MU = 384.0
EXAMPLE_LAM = 577.0


def example_box_params(
    divisions: Sequence[int] = (2, 2, 2),
    grading: Optional[Grading] = None,
) -> BoxMeshParams:
    """Rotated and translated elastic box; ``grading`` refines toward an edge or vertex."""
    return BoxMeshParams(
        bounds=EXAMPLE_BOUNDS,
        divisions=tuple(divisions),
        grading=grading or Grading(),
        transforms=[RigidTransform(angles=EXAMPLE_ANGLES, translation=EXAMPLE_TRANSLATION)],
    )


def unit_cube_params(divisions: Sequence[int] = (2, 2, 2), grading: Optional[Grading] = None) -> BoxMeshParams:
    return BoxMeshParams(divisions=tuple(divisions), grading=grading or Grading())


def displacement_star(x: np.ndarray) -> np.ndarray:
    """u* = 1/4 (sin(pi x / 4), z^3, -y)."""
    return 0.25 * np.stack([np.sin(np.pi * x[:, 0] / 4.0), x[:, 2] ** 3, -x[:, 1]], axis=1)


def displacement_star_gradient(x: np.ndarray) -> np.ndarray:
    """(n, 3, 3) with [.., a, d] = d u*_a / d x_d."""
    grad = np.zeros((x.shape[0], 3, 3))
    grad[:, 0, 0] = np.pi / 16.0 * np.cos(np.pi * x[:, 0] / 4.0)
    grad[:, 1, 2] = 0.75 * x[:, 2] ** 2
    grad[:, 2, 1] = -0.25
    return grad


class ManufacturedCase(BaseModel):
    """
    Pure traction problem manufactured from u*.

    The exact solution is u* minus its L2 projection onto the rigid motions.
    ``coefficients`` are computed once and shared by every mesh level.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    mu: float = EXAMPLE_MU
    lam: float = EXAMPLE_LAM
    frame: RigidFrame
    coefficients: np.ndarray
    """c_k = (u*, z_k)"""
    perturbation: np.ndarray = Field(default_factory=lambda: np.zeros(RIGID_DIM))
    """d_k in f + sum_k d_k z_k"""

    def stress(self, x: np.ndarray) -> np.ndarray:
        """(n, 3, 3) stress of u*; rigid motions do not change it."""
        div = np.pi / 16.0 * np.cos(np.pi * x[:, 0] / 4.0)
        sigma = np.zeros((x.shape[0], 3, 3))
        sigma[:, 0, 0] = (2.0 * self.mu + self.lam) * div
        sigma[:, 1, 1] = self.lam * div
        sigma[:, 2, 2] = self.lam * div
        sigma[:, 1, 2] = sigma[:, 2, 1] = self.mu * (0.75 * x[:, 2] ** 2 - 0.25)
        return sigma

    def body_force(self, x: np.ndarray) -> np.ndarray:
        """-div sigma(u*) plus the rigid perturbation."""
        f = np.zeros((x.shape[0], 3))
        f[:, 0] = (2.0 * self.mu + self.lam) * np.pi**2 / 64.0 * np.sin(np.pi * x[:, 0] / 4.0)
        f[:, 1] = -1.5 * self.mu * x[:, 2]
        if np.any(self.perturbation):
            f += np.einsum("k,nka->na", self.perturbation, self.frame.evaluate(x))
        return f

    def traction(self, x: np.ndarray, normals: np.ndarray) -> np.ndarray:
        return np.einsum("nab,nb->na", self.stress(x), normals)

    def exact(self, x: np.ndarray) -> np.ndarray:
        return displacement_star(x) - np.einsum("k,nka->na", self.coefficients, self.frame.evaluate(x))

    def exact_gradient(self, x: np.ndarray) -> np.ndarray:
        rigid = np.einsum("k,kad->ad", self.coefficients, self.frame.gradients())
        return displacement_star_gradient(x) - rigid[None, :, :]

    @property
    def is_perturbed(self) -> bool:
        return bool(np.any(self.perturbation))


def make_case(
    finest_mesh: Mesh,
    perturb: Optional[Sequence[float]] = None,
    mu: float = EXAMPLE_MU,
    lam: float = EXAMPLE_LAM,
    degree: int = 6,
) -> ManufacturedCase:
    """
    Manufactured case with rigid coefficients integrated on ``finest_mesh``.

    Args:
        finest_mesh: Mesh whose quadrature fixes c_k for all levels
        perturb: Optional six rigid-motion coefficients added to f
        mu: Shear modulus
        lam: First Lame parameter
        degree: Quadrature degree for c_k
    """
    frame = l2_frame(finest_mesh)
    coefficients = integrate_volume(
        finest_mesh,
        lambda x: np.einsum("nka,na->nk", frame.evaluate(x), displacement_star(x)),
        degree,
    )
    perturbation = np.zeros(RIGID_DIM) if perturb is None else np.asarray(perturb, dtype=float)
    logger.debug("Rigid coefficients of u*: %s", np.array2string(coefficients, precision=3))
    return ManufacturedCase(mu=mu, lam=lam, frame=frame, coefficients=coefficients, perturbation=perturbation)


class PoissonCase(BaseModel):
    """u = cos(pi x) cos(pi y) cos(pi z) on the unit cube; zero flux and zero mean."""

    def exact(self, x: np.ndarray) -> np.ndarray:
        return np.prod(np.cos(np.pi * x), axis=1)

    def exact_gradient(self, x: np.ndarray) -> np.ndarray:
        c = np.cos(np.pi * x)
        s = np.sin(np.pi * x)
        return -np.pi * np.stack([s[:, 0] * c[:, 1] * c[:, 2], c[:, 0] * s[:, 1] * c[:, 2], c[:, 0] * c[:, 1] * s[:, 2]], axis=1)

    def source(self, x: np.ndarray) -> np.ndarray:
        return 3.0 * np.pi**2 * self.exact(x)
