"""Local environment configuration."""
import os
from neumann_elasticity.domain.entities.app_config import AppConfig

config = AppConfig(
    output_dir=os.getenv("NEUMANN_OUTPUT_DIR", "results"),
    log_level=os.getenv("LOG_LEVEL", "INFO"),
)
