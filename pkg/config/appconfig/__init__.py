"""Application configuration modules."""

