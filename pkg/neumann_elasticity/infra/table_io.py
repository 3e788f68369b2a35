"""Table emission: CSV and Parquet through pandas, JSON through pydantic."""
from pathlib import Path
from typing import Literal, Type, TypeVar, Union

import pandas as pd
from pydantic import ValidationError

from neumann_elasticity.domain.entities.study import ConvergenceTable, EigenBoundsTable
from neumann_elasticity.infra.common import OutputError, get_logger

logger = get_logger(__name__)

Table = Union[ConvergenceTable, EigenBoundsTable]
TableT = TypeVar("TableT", ConvergenceTable, EigenBoundsTable)
TableFormat = Literal["csv", "json", "parquet"]

FLOAT_FORMAT = "%.6e"


class TableIO:
    """Result table I/O adapter."""

    def to_frame(self, table: Table) -> pd.DataFrame:
        """Rows as a DataFrame with exactly the table's columns, in order."""
        columns = list(table.COLUMNS)
        records = [row.model_dump(include=set(columns)) for row in table.rows]
        return pd.DataFrame.from_records(records, columns=columns)

    def write_csv(self, table: Table, path: Union[str, Path]) -> None:
        """Write CSV; missing values are empty cells."""
        self.to_frame(table).to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="")

    def write_json(self, table: Table, path: Union[str, Path]) -> None:
        """Write rows together with the config echo and version."""
        Path(path).write_text(table.model_dump_json(indent=2), encoding="utf-8")

    def write_parquet(self, table: Table, path: Union[str, Path]) -> None:
        self.to_frame(table).to_parquet(path, index=False, engine="pyarrow")

    def emit(self, table: Table, fmt: TableFormat, path: Union[str, Path]) -> Path:
        """
        Write a table in the given format.

        Args:
            table: Convergence or eigen-bounds table
            fmt: csv, json or parquet
            path: Target file, parent directories are created

        Returns:
            The written path

        Raises:
            OutputError: On any I/O failure, carrying the path
        """
        writers = {"csv": self.write_csv, "json": self.write_json, "parquet": self.write_parquet}
        if fmt not in writers:
            raise OutputError(f"Unknown table format '{fmt}'", str(path))
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            writers[fmt](table, path)
        except OSError as e:
            raise OutputError(f"Could not write {fmt} table ({e.strerror or e})", str(path)) from e
        logger.info("Wrote %d rows to %s", len(table.rows), path)
        return path

    def read_json(self, path: Union[str, Path], table_type: Type[TableT] = ConvergenceTable) -> TableT:
        try:
            return table_type.model_validate_json(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise OutputError(f"Could not read table ({e.strerror or e})", str(path)) from e
        except ValidationError as e:
            raise OutputError(f"Invalid table JSON ({e.error_count()} errors)", str(path)) from e

    def read_frame(self, path: Union[str, Path]) -> pd.DataFrame:
        """Read a CSV or Parquet table back as a DataFrame."""
        path = Path(path)
        try:
            if path.suffix == ".parquet":
                return pd.read_parquet(path, engine="pyarrow")
            return pd.read_csv(path)
        except OSError as e:
            raise OutputError(f"Could not read table ({e.strerror or e})", str(path)) from e
