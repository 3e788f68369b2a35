"""Common infrastructure utilities."""
from neumann_elasticity.infra.common.config import load_app_config, load_study_config
from neumann_elasticity.infra.common.paths import OutputPathBuilder
from neumann_elasticity.infra.common.clock import Clock, FrozenClock, SystemClock, get_clock, set_clock
from neumann_elasticity.infra.common.logger import setup_logging, get_logger
from neumann_elasticity.infra.common.errors import (
    NeumannError,
    ConfigError,
    MeshError,
    AssemblyError,
    FactorizationError,
    BasisError,
    IncompatibleRhsError,
    DimensionError,
    SizeLimitError,
    OutputError,
)

__all__ = [
    "load_app_config",
    "load_study_config",
    "OutputPathBuilder",
    "Clock",
    "FrozenClock",
    "SystemClock",
    "get_clock",
    "set_clock",
    "setup_logging",
    "get_logger",
    "NeumannError",
    "ConfigError",
    "MeshError",
    "AssemblyError",
    "FactorizationError",
    "BasisError",
    "IncompatibleRhsError",
    "DimensionError",
    "SizeLimitError",
    "OutputError",
]
