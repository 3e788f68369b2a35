"""Centralized configuration loading."""
import importlib
import os
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.infra.common.errors import ConfigError

ENVIRONMENTS = ("local", "ci")


def _load_env_file() -> None:
    """Load environment variables from .env file if it exists."""
    env_path = Path(__file__).parent.parent.parent.parent / ".env"
    if env_path.exists():
        load_dotenv(env_path, override=True)
    else:
        load_dotenv(override=True)


def load_app_config(env: Optional[str] = None) -> AppConfig:
    """
    Load application configuration for environment.

    Args:
        env: Environment name (local, ci). If None, reads from ENV environment variable.

    Returns:
        AppConfig instance

    Raises:
        ConfigError: If config module not found or invalid
    """
    _load_env_file()

    if env is None:
        env = os.getenv("ENV", "local")

    if env not in ENVIRONMENTS:
        raise ConfigError(f"Invalid environment: {env}. Must be one of: {', '.join(ENVIRONMENTS)}")

    module_name = f"config.appconfig.{env}"
    try:
        config_module = importlib.import_module(module_name)
        return config_module.config
    except ImportError as e:
        raise ConfigError(f"Config module not found: {module_name}") from e


def _resolve_study_path(study_id: str) -> Path:
    local_path = Path("config/studies") / f"{study_id}.yml"
    if local_path.exists():
        return local_path

    import neumann_elasticity
    package_root = Path(neumann_elasticity.__file__).parent.parent
    absolute_path = package_root / "config" / "studies" / f"{study_id}.yml"
    if absolute_path.exists():
        return absolute_path

    raise ConfigError(
        f"Config not found for study '{study_id}'. "
        f"Tried: {local_path} and {absolute_path}."
    )


def load_study_config(study_id: str, config_path: Optional[str] = None) -> ExperimentConfig:
    """
    Load a study preset from YAML.

    Args:
        study_id: Study identifier (file stem under config/studies/)
        config_path: Optional explicit path to the YAML file

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigError: If the file is missing or does not describe a valid study
    """
    path = Path(config_path) if config_path else _resolve_study_path(study_id)

    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"Config file not found: {path}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in config file: {path}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"Study config must be a mapping: {path}")
    data.setdefault("name", study_id)

    try:
        return ExperimentConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid study config {path}: {e}") from e
