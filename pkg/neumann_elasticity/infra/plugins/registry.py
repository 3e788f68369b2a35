"""Study plugin registry."""
from typing import Optional

from neumann_elasticity.domain.plugins.base import StudyPlugin


STUDIES: dict[str, StudyPlugin] = {}


def register_study(plugin: StudyPlugin) -> None:
    """Register a study plugin under its formulation id."""
    STUDIES[plugin.id] = plugin


def get_study(plugin_id: Optional[str]) -> StudyPlugin:
    """
    Get study plugin.

    Args:
        plugin_id: Formulation id from the study config

    Returns:
        Study plugin instance

    Raises:
        ValueError: If no plugin found
    """
    if not plugin_id:
        raise ValueError("Plugin ID is required - no default study available")

    if plugin_id not in STUDIES:
        raise ValueError(f"Study plugin '{plugin_id}' not found")

    return STUDIES[plugin_id]
