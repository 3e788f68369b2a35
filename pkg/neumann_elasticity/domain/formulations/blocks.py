"""Block linear systems assembled from sparse, dense and matrix-free pieces."""
from typing import Mapping, Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator

from neumann_elasticity.domain.krylov.operators import as_operator
from neumann_elasticity.infra.common import DimensionError


class BlockSystem:
    """
    Block operator with named rows and a blocked right-hand side.

    Missing blocks are zero. Off-diagonal blocks are stored explicitly on both
    sides, e.g. W at (0, 1) and W^T at (1, 0).
    """

    def __init__(
        self,
        names: Sequence[str],
        sizes: Sequence[int],
        blocks: Mapping[tuple[int, int], object],
        rhs: Optional[Sequence[np.ndarray]] = None,
        preconditioner: Optional[LinearOperator] = None,
    ):
        if len(names) != len(sizes):
            raise DimensionError("Every block row needs a name and a size")
        self.names = list(names)
        self.sizes = [int(s) for s in sizes]
        self.offsets = np.concatenate([[0], np.cumsum(self.sizes)]).astype(int)
        self.blocks = {}
        for (i, j), block in blocks.items():
            shape = block.shape
            if shape != (self.sizes[i], self.sizes[j]):
                raise DimensionError(
                    f"Block ({self.names[i]}, {self.names[j]}) has shape {shape}, "
                    f"expected {(self.sizes[i], self.sizes[j])}"
                )
            self.blocks[(i, j)] = block
        if rhs is None:
            rhs = [np.zeros(s) for s in self.sizes]
        if [len(r) for r in rhs] != self.sizes:
            raise DimensionError(f"Right-hand side blocks {[len(r) for r in rhs]} do not match sizes {self.sizes}")
        self.rhs_blocks = [np.asarray(r, dtype=float) for r in rhs]
        self.preconditioner = preconditioner

    @property
    def dim(self) -> int:
        return int(self.offsets[-1])

    @property
    def rhs(self) -> np.ndarray:
        return np.concatenate(self.rhs_blocks)

    def split(self, x: np.ndarray) -> dict[str, np.ndarray]:
        return {name: x[self.offsets[k]:self.offsets[k + 1]] for k, name in enumerate(self.names)}

    def apply_blockwise(self, parts: Sequence[np.ndarray]) -> list[np.ndarray]:
        out = [np.zeros(s) for s in self.sizes]
        for (i, j), block in self.blocks.items():
            out[i] += as_operator(block).matvec(parts[j])
        return out

    def matvec(self, x: np.ndarray) -> np.ndarray:
        parts = [x[self.offsets[k]:self.offsets[k + 1]] for k in range(len(self.sizes))]
        return np.concatenate(self.apply_blockwise(parts))

    @property
    def operator(self) -> LinearOperator:
        return LinearOperator((self.dim, self.dim), matvec=self.matvec, dtype=float)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.dim, self.dim))
        for (i, j), block in self.blocks.items():
            rows = slice(self.offsets[i], self.offsets[i + 1])
            cols = slice(self.offsets[j], self.offsets[j + 1])
            dense[rows, cols] = _densify(block)
        return dense


def _densify(block) -> np.ndarray:
    if sp.issparse(block):
        return block.toarray()
    if isinstance(block, LinearOperator):
        return block.matmat(np.eye(block.shape[1]))
    return np.asarray(block, dtype=float)


def block_diagonal(operators: Sequence) -> LinearOperator:
    """diag(B_0, B_1, ...) as one operator."""
    ops = [as_operator(op) for op in operators]
    sizes = [op.shape[0] for op in ops]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)

    def matvec(x: np.ndarray) -> np.ndarray:
        return np.concatenate([op.matvec(x[offsets[k]:offsets[k + 1]]) for k, op in enumerate(ops)])

    return LinearOperator((int(offsets[-1]), int(offsets[-1])), matvec=matvec, dtype=float)
