"""Table and field emission."""
from pathlib import Path
from typing import Optional

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.study import OutputConfig
from neumann_elasticity.domain.services.function_space import Field
from neumann_elasticity.infra.common import OutputPathBuilder, get_logger
from neumann_elasticity.infra.table_io import Table, TableIO
from neumann_elasticity.infra.vtk_writer import export_field

logger = get_logger(__name__)


def output_dir(output: OutputConfig, app_config: AppConfig) -> Path:
    return Path(output.out_dir or app_config.output_dir)


def emit_table(
    table: Table,
    output: OutputConfig,
    app_config: AppConfig,
    study_name: str,
    suffix: Optional[str] = None,
) -> Path:
    """Write the table under the output directory in the configured format."""
    path = OutputPathBuilder.table_path(output_dir(output, app_config), study_name, output.format, suffix)
    return TableIO().emit(table, output.format, path)


def emit_field(
    field: Field,
    output: OutputConfig,
    app_config: AppConfig,
    study_name: str,
    level: int,
) -> Path:
    """Write a level's solution as legacy VTK."""
    path = OutputPathBuilder.vtk_path(output_dir(output, app_config), study_name, level)
    name = "u" if field.space.is_vector else "phi"
    return export_field(path, field, name)
