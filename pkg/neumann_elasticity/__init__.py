"""Solvers and experiment harness for pure-Neumann linear elasticity."""

__version__ = "0.1.0"
