"""Orthonormal bases of rigid motions built from the tensor of inertia."""
from typing import Callable, Literal, Optional

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict

from neumann_elasticity.domain.entities.forms import VectorMass
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.linalg.eigen import dense_sym_eig
from neumann_elasticity.domain.services.assembly import assemble_form
from neumann_elasticity.domain.services.function_space import FunctionSpace
from neumann_elasticity.domain.services.norms import integrate_boundary, integrate_volume
from neumann_elasticity.infra.common import BasisError, get_logger

logger = get_logger(__name__)

BasisMode = Literal["L2", "l2"]
RIGID_DIM = 6


class RigidFrame(BaseModel):
    """
    Center, volume and principal axes of a body.

    Motion k < 3 is the translation volume^{-1/2} v_k, motion k >= 3 the
    rotation eig_j^{-1/2} (x - c) x v_j with j = k - 3. Under the inner
    product that produced the moments the six motions are orthonormal.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    volume: float
    center: np.ndarray
    eigenvalues: np.ndarray
    """Principal moments, descending."""
    axes: np.ndarray
    """Principal axes as columns."""
    mode: BasisMode

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """(n, 6, 3) values of the six motions at points x (n, 3)."""
        x = np.asarray(x, dtype=float)
        out = np.empty((x.shape[0], RIGID_DIM, 3))
        out[:, :3, :] = (self.axes.T / np.sqrt(self.volume))[None, :, :]
        r = x - self.center
        for j in range(3):
            out[:, 3 + j, :] = np.cross(r, self.axes[:, j]) / np.sqrt(self.eigenvalues[j])
        return out

    def gradients(self) -> np.ndarray:
        """(6, 3, 3) constant gradients, [k, a, d] = d z_k,a / d x_d."""
        grads = np.zeros((RIGID_DIM, 3, 3))
        identity = np.eye(3)
        for j in range(3):
            for d in range(3):
                grads[3 + j, :, d] = np.cross(identity[d], self.axes[:, j]) / np.sqrt(self.eigenvalues[j])
        return grads

    def combination(self, coefficients) -> Callable[[np.ndarray], np.ndarray]:
        """Pointwise function sum_k c_k z_k."""
        coefficients = np.asarray(coefficients, dtype=float)
        return lambda x: np.einsum("k,nka->na", coefficients, self.evaluate(x))


class RigidBasis(BaseModel):
    """
    Discrete rigid motions on a vector space.

    ``Y`` holds the nodal interpolants (primal representation). In L2 mode
    ``W = M Y`` is the dual representation; in l2 mode Y is orthonormal in
    the Euclidean product and ``W = Y``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    frame: RigidFrame
    Y: np.ndarray
    W: np.ndarray

    @property
    def mode(self) -> BasisMode:
        return self.frame.mode

    @property
    def center(self) -> np.ndarray:
        return self.frame.center

    @property
    def Z(self) -> np.ndarray:
        self.require("l2")
        return self.Y

    def require(self, mode: BasisMode) -> None:
        if self.mode != mode:
            raise BasisError(f"Operation needs an {mode} basis, got {self.mode}")


def principal_axes(tensor: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigenpairs of a symmetric 3x3 tensor, eigenvalues descending.

    Each eigenvector is signed so that its largest-magnitude component is positive.
    """
    values, vectors = dense_sym_eig(tensor)
    values, vectors = values[::-1], vectors[:, ::-1].copy()
    for j in range(3):
        pivot = np.argmax(np.abs(vectors[:, j]))
        if vectors[pivot, j] < 0.0:
            vectors[:, j] *= -1.0
    return values, vectors


def mesh_moments(mesh: Mesh) -> tuple[float, np.ndarray, np.ndarray]:
    """Exact volume, first moment and second moment tensor from per-cell formulas."""
    p = mesh.vertices[mesh.cells]
    vol = mesh.cell_volumes
    s = p.sum(axis=1)
    first = np.einsum("c,cd->d", vol, s) / 4.0
    second = (np.einsum("c,cka,ckb->ab", vol, p, p) + np.einsum("c,ca,cb->ab", vol, s, s)) / 20.0
    return float(vol.sum()), first, second


def frame_from_moments(volume: float, first: np.ndarray, second: np.ndarray, mode: BasisMode) -> RigidFrame:
    """Frame from zeroth, first and second moments under some inner product."""
    if not volume > 0.0:
        raise BasisError(f"Degenerate domain with volume {volume}")
    center = first / volume
    spread = second - volume * np.outer(center, center)
    inertia = np.trace(spread) * np.eye(3) - spread
    eigenvalues, axes = principal_axes(inertia)
    if not eigenvalues[-1] > 0.0:
        raise BasisError(f"Degenerate inertia tensor, eigenvalues {eigenvalues}")
    return RigidFrame(volume=volume, center=center, eigenvalues=eigenvalues, axes=axes, mode=mode)


def l2_frame(mesh: Mesh) -> RigidFrame:
    """Frame under the L2 inner product of the mesh domain."""
    return frame_from_moments(*mesh_moments(mesh), mode="L2")


def discrete_frame(points: np.ndarray) -> RigidFrame:
    """Frame under the Euclidean product of nodal coefficient vectors at ``points``."""
    points = np.asarray(points, dtype=float)
    center = points.mean(axis=0)
    r = points - center
    second = r.T @ r + len(points) * np.outer(center, center)
    return frame_from_moments(float(len(points)), points.sum(axis=0), second, mode="l2")


def interpolate_motions(space: FunctionSpace, frame: RigidFrame) -> np.ndarray:
    """(dof_count, 6) nodal interpolants of the frame's motions."""
    if not space.is_vector:
        raise BasisError(f"Rigid motions need a vector space, got {space.family.value}")
    values = frame.evaluate(space.node_coordinates)
    return values.transpose(0, 2, 1).reshape(space.dof_count, RIGID_DIM)


def rigid_basis(
    space: FunctionSpace,
    mode: BasisMode = "L2",
    mass: Optional[sp.spmatrix] = None,
    frame: Optional[RigidFrame] = None,
) -> RigidBasis:
    """
    Orthonormal rigid-motion basis on a vector space.

    Args:
        space: Vector-valued space
        mode: "L2" for the L2-orthonormal basis, "l2" for the Euclidean one
        mass: Vector mass matrix of ``space`` (assembled if needed, L2 mode only)
        frame: Precomputed frame to reuse (L2 mode only)

    Raises:
        BasisError: On scalar spaces or degenerate domains
    """
    if not space.is_vector:
        raise BasisError(f"Rigid motions need a vector space, got {space.family.value}")

    if mode == "l2":
        frame = discrete_frame(space.node_coordinates)
        Y = interpolate_motions(space, frame)
        return RigidBasis(frame=frame, Y=Y, W=Y)

    frame = frame or l2_frame(space.mesh)
    if mass is None:
        mass = assemble_form(VectorMass(), space, space)
    Y = interpolate_motions(space, frame)
    return RigidBasis(frame=frame, Y=Y, W=np.asarray(mass @ Y))


def axis_angles(first: RigidFrame, second: RigidFrame) -> np.ndarray:
    """Angles in radians between corresponding principal axes of two frames."""
    cosines = np.abs(np.einsum("aj,aj->j", first.axes, second.axes)).clip(0.0, 1.0)
    return np.arccos(cosines)


class Compatibility(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    net_force: np.ndarray
    net_torque: np.ndarray

    def max_norm(self) -> float:
        return float(max(np.abs(self.net_force).max(), np.abs(self.net_torque).max()))


def check_compatibility(f, h, mesh: Mesh, degree: int = 6) -> Compatibility:
    """
    Net force and net torque of volume load ``f`` and traction ``h``.

    Torques are the integrals of f x x and h x x.
    """
    force = np.zeros(3)
    torque = np.zeros(3)
    if f is not None:
        force += integrate_volume(mesh, f, degree)
        torque += integrate_volume(mesh, lambda x: np.cross(f(x), x), degree)
    if h is not None:
        force += integrate_boundary(mesh, h, degree)
        torque += integrate_boundary(mesh, lambda x, n: np.cross(h(x, n), x), degree)
    return Compatibility(net_force=force, net_torque=torque)
