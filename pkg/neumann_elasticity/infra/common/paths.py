"""Centralized output path building."""
from pathlib import Path


class OutputPathBuilder:
    """Builder for artifact paths under an output directory."""

    @staticmethod
    def table_path(out_dir: str | Path, study_name: str, fmt: str, suffix: str | None = None) -> Path:
        """Path of an emitted table, e.g. results/lagrange-uniform.csv."""
        stem = study_name if not suffix else f"{study_name}_{suffix}"
        return Path(out_dir) / f"{stem}.{fmt}"

    @staticmethod
    def vtk_path(out_dir: str | Path, study_name: str, level: int) -> Path:
        """Path of the VTK export for one level."""
        return Path(out_dir) / f"{study_name}_level{level}.vtk"

    @staticmethod
    def lam_suffix(lam: float | None) -> str:
        """File-name tag for a Lamé λ value (None means incompressible)."""
        if lam is None:
            return "lam-inf"
        return f"lam-{lam:g}"
