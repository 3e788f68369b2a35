"""CI environment configuration: quiet logs, tighter dense limit."""
import os
from neumann_elasticity.domain.entities.app_config import AppConfig

config = AppConfig(
    output_dir=os.getenv("NEUMANN_OUTPUT_DIR", "build/results"),
    log_level="WARNING",
    dense_limit=1000,
    max_iterations=300,
)
