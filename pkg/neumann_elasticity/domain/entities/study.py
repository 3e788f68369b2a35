"""Study configuration and result tables."""
from typing import ClassVar, Literal

from pydantic import BaseModel, Field, model_validator

from neumann_elasticity.domain.entities.solver import StoppingRule


FormulationId = Literal[
    "pinpoint-poisson",
    "pinpoint-elasticity",
    "lagrange",
    "cg-singular",
    "natural-norm",
    "mixed-double",
    "mixed-single",
    "eigenbounds",
]
PinpointStrategy = Literal["3circ", "1tri", "3tri", "3dot", "poisson-corner"]
PreconditionerId = Literal["b1", "be", "bm", "pzam", "pseudo"]

MIXED_FORMULATIONS = ("mixed-double", "mixed-single")
LAMBDA_SWEEP: tuple[float | None, ...] = (1.0, 1e4, 1e8, 1e12, None)


class Material(BaseModel):
    """Lamé parameters; ``lam=None`` stands for λ = ∞."""
    mu: float = Field(default=384.0, gt=0)
    lam: float | None = Field(default=577.0, ge=0)


class FormulationConfig(BaseModel):
    """Which linear system is built and how it is solved."""
    formulation: FormulationId
    strategy: PinpointStrategy | None = None
    rhs_projector: Literal["pz", "pt"] = "pt"
    sol_projector: Literal["pz", "p", "none"] = "p"
    precond: PreconditionerId | None = None
    x0: Literal["zero", "rhs", "random"] = "zero"
    material: Material = Field(default_factory=Material)
    stop: StoppingRule = Field(default_factory=StoppingRule)
    perturb: list[float] | None = None
    """Coefficients of the rigid motions added to f."""

    @model_validator(mode="after")
    def _check_combination(self) -> "FormulationConfig":
        if self.material.lam is None and self.formulation not in MIXED_FORMULATIONS:
            raise ValueError("lam = inf is only valid for mixed formulations")
        if self.formulation == "pinpoint-elasticity" and self.strategy in (None, "poisson-corner"):
            raise ValueError("pinpoint-elasticity needs one of 3circ, 1tri, 3tri, 3dot")
        if self.formulation == "pinpoint-poisson" and self.strategy not in (None, "poisson-corner"):
            raise ValueError("pinpoint-poisson only supports the poisson-corner strategy")
        if self.perturb is not None and len(self.perturb) != 6:
            raise ValueError("perturb needs exactly 6 coefficients")
        if self.formulation in MIXED_FORMULATIONS and "stop" not in self.model_fields_set:
            self.stop = StoppingRule(mode="absolute", tolerance=1e-8, max_iterations=1000)
        return self


class MeshFamily(BaseModel):
    """Mesh sequence of a study."""
    kind: Literal["uniform", "graded"] = "uniform"
    geometry: Literal["example-box", "unit-cube"] = "example-box"
    base_divisions: tuple[int, int, int] = (2, 2, 2)
    beta: float = 2.0
    first_level: int = Field(default=1, ge=0)


class OutputConfig(BaseModel):
    """Where and how tables are written."""
    out_dir: str | None = None
    format: Literal["csv", "json", "parquet"] = "csv"
    vtk: bool = False


class ExperimentConfig(BaseModel):
    """One convergence study."""
    name: str
    formulation: FormulationConfig
    mesh: MeshFamily = Field(default_factory=MeshFamily)
    levels: int = Field(default=3, ge=2)
    seed: int = 0
    output: OutputConfig = Field(default_factory=OutputConfig)
    parallel_levels: bool = False


class ConvergenceRow(BaseModel):
    """One refinement level of a study."""
    level: int
    ndof: int
    """Displacement (or potential) dofs; multipliers and pressures are not counted."""
    h1_error: float | None = None
    rate: float | None = None
    iters: int
    orth_L2: float | None = None
    orth_l2: float | None = None
    wall_ms: float = 0.0
    converged: bool = True


class ConvergenceTable(BaseModel):
    """Rows of a convergence study plus the config that produced them."""
    COLUMNS: ClassVar[tuple[str, ...]] = ("level", "ndof", "h1_error", "rate", "iters", "orth_L2", "orth_l2", "wall_ms")
    rows: list[ConvergenceRow] = Field(default_factory=list)
    config: ExperimentConfig | None = None
    version: str | None = None

    @property
    def all_converged(self) -> bool:
        return all(row.converged for row in self.rows)

    def rates(self) -> list[float | None]:
        return [row.rate for row in self.rows]


class EigenBoundsRow(BaseModel):
    """Spectral interval endpoints of a preconditioned saddle problem."""
    level: int
    ndof: int
    """Dimension of the saddle system, displacements plus the six multipliers."""
    neg_min: float
    neg_max: float
    pos_min: float
    pos_max: float
    kappa: float
    """pos_max / pos_min."""
    converged: bool = True


class EigenBoundsTable(BaseModel):
    """Spectral bounds over a mesh sequence."""
    COLUMNS: ClassVar[tuple[str, ...]] = ("level", "ndof", "neg_min", "neg_max", "pos_min", "pos_max", "kappa")
    rows: list[EigenBoundsRow] = Field(default_factory=list)
    config: ExperimentConfig | None = None
    version: str | None = None

    @property
    def all_converged(self) -> bool:
        return True

