"""Mesh entities: grading descriptor, generation parameters and the mesh itself."""
from functools import cached_property
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


Interval = tuple[float, float]


class Grading(BaseModel):
    """
    Grading descriptor.

    ``vertex`` attracts toward the box corner selected by ``corner`` (0 = lower
    end, 1 = upper end per axis). ``edge`` attracts toward the box edge parallel
    to ``axis`` that passes through that corner; ``axis`` itself stays uniform.
    """
    kind: Literal["uniform", "vertex", "edge"] = "uniform"
    beta: float = 1.0
    corner: tuple[int, int, int] = (0, 0, 0)
    axis: int = Field(default=0, ge=0, le=2)

    @field_validator("corner")
    @classmethod
    def _corner_bits(cls, value: tuple[int, int, int]) -> tuple[int, int, int]:
        if any(c not in (0, 1) for c in value):
            raise ValueError("corner entries must be 0 or 1")
        return value

    @property
    def graded_axes(self) -> tuple[int, ...]:
        """Axes along which the power-law map acts."""
        if self.kind == "uniform":
            return ()
        if self.kind == "vertex":
            return (0, 1, 2)
        return tuple(a for a in range(3) if a != self.axis)


class RigidTransform(BaseModel):
    """Extrinsic rotation R_z R_y R_x followed by a translation."""
    angles: tuple[float, float, float] = (0.0, 0.0, 0.0)
    translation: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def rotation_matrix(self) -> np.ndarray:
        ax, ay, az = self.angles
        cx, sx = np.cos(ax), np.sin(ax)
        cy, sy = np.cos(ay), np.sin(ay)
        cz, sz = np.cos(az), np.sin(az)
        rx = np.array([[1.0, 0.0, 0.0], [0.0, cx, -sx], [0.0, sx, cx]])
        ry = np.array([[cy, 0.0, sy], [0.0, 1.0, 0.0], [-sy, 0.0, cy]])
        rz = np.array([[cz, -sz, 0.0], [sz, cz, 0.0], [0.0, 0.0, 1.0]])
        return rz @ ry @ rx


class BoxMeshParams(BaseModel):
    """Everything needed to regenerate a structured box mesh."""
    bounds: tuple[Interval, Interval, Interval] = ((0.0, 1.0), (0.0, 1.0), (0.0, 1.0))
    divisions: tuple[int, int, int] = (1, 1, 1)
    grading: Grading = Field(default_factory=Grading)
    transforms: list[RigidTransform] = Field(default_factory=list)

    def refined(self) -> "BoxMeshParams":
        """Same box and grading with every division doubled."""
        return self.model_copy(update={"divisions": tuple(2 * d for d in self.divisions)})

    def with_transform(self, transform: RigidTransform) -> "BoxMeshParams":
        return self.model_copy(update={"transforms": [*self.transforms, transform]})

    @property
    def box_volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in self.bounds]))


class Mesh(BaseModel):
    """
    Tetrahedral mesh of a box.

    Cells are positively oriented. ``boundary_facets`` keep the vertex order of
    the owning cell's face and ``facet_normals`` point out of the domain.
    ``corner_vertices[i + 2j + 4k]`` is the vertex at box corner (i, j, k).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    vertices: np.ndarray
    cells: np.ndarray
    boundary_facets: np.ndarray
    facet_normals: np.ndarray
    facet_cells: np.ndarray
    corner_vertices: np.ndarray
    interior_facet_count: int
    params: BoxMeshParams

    @model_validator(mode="after")
    def _freeze_arrays(self) -> "Mesh":
        for name in ("vertices", "cells", "boundary_facets", "facet_normals", "facet_cells", "corner_vertices"):
            getattr(self, name).setflags(write=False)
        return self

    @property
    def grading(self) -> Grading:
        return self.params.grading

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_cells(self) -> int:
        return int(self.cells.shape[0])

    @cached_property
    def cell_volumes(self) -> np.ndarray:
        p = self.vertices[self.cells]
        jac = np.stack([p[:, 1] - p[:, 0], p[:, 2] - p[:, 0], p[:, 3] - p[:, 0]], axis=2)
        return np.linalg.det(jac) / 6.0

    @property
    def volume(self) -> float:
        return float(self.cell_volumes.sum())

    @cached_property
    def edges(self) -> np.ndarray:
        """Unique edges as sorted vertex pairs, lexicographically ordered."""
        return self.edge_topology[0]

    @cached_property
    def cell_edges(self) -> np.ndarray:
        """Edge indices per cell in local order (01, 02, 03, 12, 13, 23)."""
        return self.edge_topology[1]

    @cached_property
    def edge_topology(self) -> tuple[np.ndarray, np.ndarray]:
        local = np.array([[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])
        pairs = np.sort(self.cells[:, local], axis=2).reshape(-1, 2)
        edges, inverse = np.unique(pairs, axis=0, return_inverse=True)
        return edges, inverse.reshape(-1, 6)

    def edge_index(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Look up edge indices for vertex pairs given in any order."""
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        keys = self.edges[:, 0].astype(np.int64) * self.n_vertices + self.edges[:, 1]
        return np.searchsorted(keys, lo.astype(np.int64) * self.n_vertices + hi)

    def h_max(self) -> float:
        """Longest cell edge."""
        e = self.vertices[self.edges[:, 1]] - self.vertices[self.edges[:, 0]]
        return float(np.linalg.norm(e, axis=1).max())
