"""Study plugin interface."""
from abc import ABC, abstractmethod
from typing import Any, Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.mesh import Mesh
from neumann_elasticity.domain.entities.solver import SolveReport
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.domain.services.function_space import Field
from neumann_elasticity.domain.services.rigid import RigidBasis


class StudyProblem(BaseModel):
    """Level-independent data of a study: the case and its exact solution, if known."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    case: Any = None
    exact: Optional[Callable[[np.ndarray], np.ndarray]] = None
    exact_gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None


class LevelSolution(BaseModel):
    """Discrete solution on one mesh level and how it was obtained."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    field: Field
    ndof: int
    report: SolveReport
    basis_L2: Optional[RigidBasis] = None
    basis_l2: Optional[RigidBasis] = None


class StudyPlugin(ABC):
    """Builds and solves one formulation on a mesh sequence."""

    id: str

    @abstractmethod
    def prepare(self, config: ExperimentConfig, finest_mesh: Mesh) -> StudyProblem:
        """
        Set up the level-independent problem.

        Args:
            config: Study configuration
            finest_mesh: Finest mesh of the sequence

        Returns:
            Problem shared by every level
        """
        raise NotImplementedError

    @abstractmethod
    def solve_level(
        self,
        problem: StudyProblem,
        mesh: Mesh,
        config: ExperimentConfig,
        app_config: AppConfig,
        rng: np.random.Generator,
    ) -> LevelSolution:
        """
        Assemble and solve on one mesh.

        Args:
            problem: Output of ``prepare``
            mesh: Mesh of this level
            config: Study configuration
            app_config: Application configuration
            rng: Generator for random initial guesses

        Returns:
            Solution with its solve report
        """
        raise NotImplementedError
