"""Domain entities."""
from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.mesh import BoxMeshParams, Grading, Mesh, RigidTransform
from neumann_elasticity.domain.entities.solver import SingularSolveReport, SolveReport, StoppingRule
from neumann_elasticity.domain.entities.study import (
    ConvergenceRow,
    ConvergenceTable,
    EigenBoundsRow,
    EigenBoundsTable,
    ExperimentConfig,
    FormulationConfig,
    Material,
    MeshFamily,
    OutputConfig,
)

__all__ = [
    "AppConfig",
    "BoxMeshParams",
    "Grading",
    "Mesh",
    "RigidTransform",
    "SingularSolveReport",
    "SolveReport",
    "StoppingRule",
    "ConvergenceRow",
    "ConvergenceTable",
    "EigenBoundsRow",
    "EigenBoundsTable",
    "ExperimentConfig",
    "FormulationConfig",
    "Material",
    "MeshFamily",
    "OutputConfig",
]
