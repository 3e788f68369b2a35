"""Krylov solver entities."""
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class StoppingRule(BaseModel):
    """When a Krylov iteration stops."""
    mode: Literal["relative", "absolute"] = "relative"
    tolerance: float = Field(default=1e-10, gt=0)
    max_iterations: int = Field(default=500, gt=0)

    def threshold(self, initial_norm: float) -> float:
        """Residual norm that counts as converged."""
        if self.mode == "relative":
            return self.tolerance * initial_norm
        return self.tolerance


class SolveReport(BaseModel):
    """Outcome of one Krylov solve; residuals are preconditioned norms."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    solution: np.ndarray
    residual_history: list[float]
    converged: bool
    stop_reason: str

    @property
    def iterations(self) -> int:
        return len(self.residual_history) - 1


class SingularSolveReport(SolveReport):
    """Solve of the singular system with both orthogonality residuals."""
    orth_l2: float
    """max_k |Z_k^T u|"""
    orth_L2: float
    """max_k |Y_k^T M u|"""
