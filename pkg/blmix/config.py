"""
Configuration management for blmix.

Persistent values live in ~/.blmix/config.json. Runtime settings layer
defaults < config file < environment (a .env file is loaded first).

Path resolution is lazy (per-call) so HOME monkeypatching in tests is honored.
"""
import json
import os
from typing import Any, Dict

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from .backends import BackendFactory
from .errors import ParameterError


def config_dir() -> str:
    """Return the blmix config directory, resolved per call."""
    return os.path.expanduser("~/.blmix")


def config_path() -> str:
    """Return the full path to config.json, resolved per call."""
    return os.path.join(config_dir(), "config.json")


def load_config() -> Dict[str, Any]:
    """
    Load configuration from local file.

    Returns:
        Dict with configuration data. Empty dict if file doesn't exist.
    """
    path = config_path()
    if not os.path.exists(path):
        return {}
    with open(path, 'r') as f:
        return json.load(f)


def save_config(cfg: Dict[str, Any]) -> None:
    """Save configuration to local file."""
    os.makedirs(config_dir(), exist_ok=True)
    with open(config_path(), 'w') as f:
        json.dump(cfg, f, indent=2)


def get_config_value(key: str, default: Any = None) -> Any:
    """
    Get a specific configuration value.

    Args:
        key: Configuration key (supports nested keys with dot notation)
        default: Default value if key doesn't exist
    """
    value: Any = load_config()
    for k in key.split('.'):
        if isinstance(value, dict) and k in value:
            value = value[k]
        else:
            return default
    return value


def set_config_value(key: str, value: Any) -> None:
    """Set a configuration value (dot notation for nested keys)."""
    cfg = load_config()
    keys = key.split('.')

    current = cfg
    for k in keys[:-1]:
        if not isinstance(current.get(k), dict):
            current[k] = {}
        current = current[k]
    current[keys[-1]] = value

    save_config(cfg)


class Settings(BaseModel):
    """Runtime settings shared by the library entry points and the CLI."""

    epsilon: float = Field(0.01, gt=0, lt=1)
    backend: str = "float"
    threads: int = Field(1, ge=1)
    critical_constant: float = Field(1.0, gt=0)
    near_critical_tolerance: float = Field(0.05, ge=0)
    rational_max_n: int = Field(64, ge=2)
    cap_floor: int = Field(1000, ge=1)
    state_dir: str = Field(default_factory=lambda: os.path.join(config_dir(), "sweep_jobs"))

    @field_validator("backend")
    @classmethod
    def _known_backend(cls, value: str) -> str:
        value = value.lower()
        if not BackendFactory.is_backend_available(value):
            raise ValueError(f"unknown backend '{value}'")
        return value


#: Environment variables mapped onto Settings fields.
ENV_KEYS = {
    "BLMIX_EPSILON": "epsilon",
    "BLMIX_BACKEND": "backend",
    "BLMIX_THREADS": "threads",
    "BLMIX_CRITICAL_CONSTANT": "critical_constant",
    "BLMIX_RATIONAL_MAX_N": "rational_max_n",
    "BLMIX_STATE_DIR": "state_dir",
}


def load_settings(**overrides: Any) -> Settings:
    """
    Resolve settings from defaults, config file, environment and overrides.

    Raises:
        ParameterError: If any layer holds an invalid value
    """
    load_dotenv()
    values: Dict[str, Any] = {
        k: v for k, v in load_config().items() if k in Settings.model_fields
    }
    for env, field in ENV_KEYS.items():
        if os.environ.get(env):
            values[field] = os.environ[env]
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ParameterError(str(e), context="settings") from e
