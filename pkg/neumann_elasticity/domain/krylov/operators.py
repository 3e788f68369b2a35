"""Matrix-free operator helpers."""
from typing import Optional

import numpy as np
from scipy.sparse.linalg import LinearOperator, aslinearoperator


def as_operator(A) -> LinearOperator:
    return A if isinstance(A, LinearOperator) else aslinearoperator(A)


def identity_operator(n: int) -> LinearOperator:
    return LinearOperator((n, n), matvec=lambda x: np.array(x, dtype=float, copy=True), dtype=float)


def low_rank_update(A, W: np.ndarray) -> LinearOperator:
    """x -> A x + W (W^T x)."""
    op = as_operator(A)
    W = np.asarray(W, dtype=float)
    return LinearOperator(op.shape, matvec=lambda x: op.matvec(x) + W @ (W.T @ x), dtype=float)


def linearity_defect(op, rng: Optional[np.random.Generator] = None, samples: int = 3) -> float:
    """
    Largest relative deviation of op(a x + b y) from a op(x) + b op(y) on random samples.
    """
    op = as_operator(op)
    rng = rng or np.random.default_rng(0)
    n = op.shape[1]
    worst = 0.0
    for _ in range(samples):
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        a, b = rng.standard_normal(2)
        lhs = op.matvec(a * x + b * y)
        rhs = a * op.matvec(x) + b * op.matvec(y)
        scale = max(np.linalg.norm(rhs), np.linalg.norm(lhs), np.finfo(float).tiny)
        worst = max(worst, float(np.linalg.norm(lhs - rhs) / scale))
    return worst
