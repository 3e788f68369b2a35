"""Use cases: convergence studies and their steps."""
