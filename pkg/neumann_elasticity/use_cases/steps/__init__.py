"""Study steps."""
