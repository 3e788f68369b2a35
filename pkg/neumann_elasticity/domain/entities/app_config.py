"""Application configuration entity."""
from pydantic import BaseModel, Field


class AppConfig(BaseModel):
    """Application configuration for the runtime environment."""
    output_dir: str = "results"
    log_level: str = "INFO"
    default_seed: int = 0
    dense_limit: int = Field(default=2000, gt=0)
    """Largest dimension handed to the dense eigensolvers."""
    inner_rtol: float = Field(default=1e-12, gt=0)
    """Relative tolerance of inner solves inside composed preconditioners."""
    max_iterations: int = Field(default=500, gt=0)
