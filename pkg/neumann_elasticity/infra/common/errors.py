"""Centralized error types."""


class NeumannError(Exception):
    """Base exception for the elasticity toolkit."""
    pass


class ConfigError(NeumannError):
    """Configuration error."""
    pass


class MeshError(NeumannError):
    """Invalid mesh generation parameters or an invalid mesh."""
    pass


class AssemblyError(NeumannError):
    """Form kind and function spaces do not fit together."""
    pass


class FactorizationError(NeumannError):
    """Sparse or dense factorization failed."""
    pass


class BasisError(NeumannError):
    """Rigid basis requested in the wrong mode or on a degenerate domain."""
    pass


class IncompatibleRhsError(NeumannError):
    """Right-hand side has a kernel component beyond tolerance."""
    pass


class DimensionError(NeumannError):
    """Block sizes or vector lengths do not match."""
    pass


class SizeLimitError(NeumannError):
    """Dense computation requested above the configured size limit."""
    pass


class OutputError(NeumannError):
    """Writing an artifact failed."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{message}: {path}")
        self.path = path
