"""Plugin interfaces."""
