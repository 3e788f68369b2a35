"""Lagrange finite element spaces on tetrahedral meshes and fields living in them."""
from enum import Enum
from functools import cached_property
from typing import Callable

import numpy as np

from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.infra.common import DimensionError


class Family(str, Enum):
    """Element family; vector families interleave components per node."""
    P1_SCALAR = "P1-scalar"
    P1_VECTOR = "P1-vector3"
    P2_VECTOR = "P2-vector3"


class FunctionSpace:
    """
    Continuous Lagrange space.

    Nodes are the mesh vertices, followed for P2 by the edges in ``mesh.edges``
    order. Global dof ``value_dim * node + component``.
    """

    def __init__(self, mesh: Mesh, family: Family | str):
        self.mesh = mesh
        self.family = Family(family)

    def __repr__(self) -> str:
        return f"FunctionSpace({self.family.value}, dofs={self.dof_count})"

    @property
    def degree(self) -> int:
        return 2 if self.family is Family.P2_VECTOR else 1

    @property
    def value_dim(self) -> int:
        return 1 if self.family is Family.P1_SCALAR else 3

    @property
    def is_vector(self) -> bool:
        return self.value_dim == 3

    @cached_property
    def node_count(self) -> int:
        if self.degree == 1:
            return self.mesh.n_vertices
        return self.mesh.n_vertices + len(self.mesh.edges)

    @property
    def dof_count(self) -> int:
        return self.value_dim * self.node_count

    @cached_property
    def cell_nodes(self) -> np.ndarray:
        if self.degree == 1:
            return np.asarray(self.mesh.cells)
        return np.hstack([self.mesh.cells, self.mesh.n_vertices + self.mesh.cell_edges])

    @cached_property
    def node_coordinates(self) -> np.ndarray:
        vertices = np.asarray(self.mesh.vertices)
        if self.degree == 1:
            return vertices
        edges = self.mesh.edges
        return np.vstack([vertices, 0.5 * (vertices[edges[:, 0]] + vertices[edges[:, 1]])])

    @cached_property
    def cell_dofs(self) -> np.ndarray:
        """(cells, nodes_per_cell * value_dim), node-major."""
        nodes = self.cell_nodes
        d = self.value_dim
        return (d * nodes[:, :, None] + np.arange(d)).reshape(nodes.shape[0], -1)

    @cached_property
    def dof_coordinates(self) -> np.ndarray:
        return np.repeat(self.node_coordinates, self.value_dim, axis=0)

    @cached_property
    def facet_nodes(self) -> np.ndarray:
        """Nodes on each boundary facet, ordered like the face basis."""
        facets = np.asarray(self.mesh.boundary_facets)
        if self.degree == 1:
            return facets
        pairs = [(0, 1), (0, 2), (1, 2)]
        edge_nodes = [
            self.mesh.n_vertices + self.mesh.edge_index(facets[:, i], facets[:, j]) for i, j in pairs
        ]
        return np.hstack([facets, np.stack(edge_nodes, axis=1)])

    @cached_property
    def barycentric_gradients(self) -> np.ndarray:
        """(cells, 4, 3) constant gradients of the barycentric coordinates."""
        p = self.mesh.vertices[self.mesh.cells]
        jac = np.stack([p[:, 1] - p[:, 0], p[:, 2] - p[:, 0], p[:, 3] - p[:, 0]], axis=2)
        inv = np.linalg.inv(jac)
        return np.concatenate([-inv.sum(axis=1, keepdims=True), inv], axis=1)

    def component_dofs(self, nodes: np.ndarray, components=(0, 1, 2)) -> np.ndarray:
        """Global dofs of the given components at the given nodes."""
        nodes = np.asarray(nodes)
        return (self.value_dim * nodes[:, None] + np.asarray(components)[None, :]).ravel()

    def shares_mesh(self, other: "FunctionSpace") -> bool:
        return self.mesh is other.mesh


class Field:
    """Coefficient vector of a finite element function."""

    def __init__(self, space: FunctionSpace, coefficients: np.ndarray):
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (space.dof_count,):
            raise DimensionError(
                f"Field of {space} needs {space.dof_count} coefficients, got {coefficients.shape}"
            )
        self.space = space
        self.coefficients = coefficients

    def nodal_values(self) -> np.ndarray:
        """(nodes, value_dim) view of the coefficients."""
        return self.coefficients.reshape(-1, self.space.value_dim)


def interpolate(space: FunctionSpace, g: Callable[[np.ndarray], np.ndarray]) -> Field:
    """Nodal interpolant: coefficients are values of ``g`` at the nodes."""
    values = np.asarray(g(space.node_coordinates), dtype=float)
    return Field(space, values.reshape(space.node_count * space.value_dim))
