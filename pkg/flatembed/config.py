"""Toolkit configuration: an optional YAML file over built-in defaults.

Lookup order for the file: an explicit path (``--config``), the
``FLATEMBED_CONFIG`` environment variable (``.env`` files are honoured), then
``flatembed.yaml`` in the working directory.
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml  # type: ignore[import-untyped]
from dotenv import load_dotenv

from .errors import InvalidDocumentError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "FLATEMBED_CONFIG"
LOG_LEVEL_ENV_VAR = "FLATEMBED_LOG_LEVEL"
DEFAULT_CONFIG_FILE = "flatembed.yaml"

DEFAULTS: Dict[str, Any] = {
    "logging": {"level": "WARNING"},
    "report": {"indent": 2},
    "threshold": {"max_m": 10**15},
    "storage": {"base_dir": "."},
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ToolkitConfig:
    """Manages toolkit configuration."""

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        """Initialize configuration.

        Args:
            config_path: YAML file to read; None means defaults only
        """
        self.config_path = Path(config_path) if config_path else None
        self.config: Dict[str, Any] = copy.deepcopy(DEFAULTS)
        self.file_data: Dict[str, Any] = {}

        if self.config_path is not None and self.config_path.exists():
            self.load()

    @classmethod
    def discover(cls, explicit: Optional[str] = None) -> "ToolkitConfig":
        """Find the configuration file by the documented lookup order."""
        load_dotenv(Path.cwd() / ".env")
        candidate = explicit or os.environ.get(CONFIG_ENV_VAR)
        if candidate:
            if not Path(candidate).exists():
                raise InvalidDocumentError(f"Config file not found: {candidate}")
            return cls(candidate)
        if Path(DEFAULT_CONFIG_FILE).exists():
            return cls(DEFAULT_CONFIG_FILE)
        return cls()

    def load(self) -> None:
        """Load configuration from the YAML file, over the defaults."""
        assert self.config_path is not None
        try:
            with open(self.config_path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise InvalidDocumentError(
                f"Invalid YAML in {self.config_path}: {e}"
            ) from e
        if not isinstance(data, dict):
            raise InvalidDocumentError(f"{self.config_path} must contain a mapping")
        self.file_data = data
        self.config = _merge(DEFAULTS, data)
        logger.debug(f"Loaded configuration from {self.config_path}")

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key.

        Args:
            key: Configuration key (supports nested keys with dots)
            default: Default value if key not found
        """
        value: Any = self.config
        for k in key.split("."):
            if isinstance(value, dict):
                value = value.get(k)
            else:
                return default
            if value is None:
                return default
        return value

    def problems(self) -> List[str]:
        """Describe every invalid setting; empty when the config is usable."""
        found: List[str] = []
        level = self.get("logging.level")
        if not isinstance(level, str) or level.upper() not in LOG_LEVELS:
            found.append(f"logging.level must be one of {', '.join(LOG_LEVELS)}")
        indent = self.get("report.indent")
        if isinstance(indent, bool) or not isinstance(indent, int) or indent < 0:
            found.append("report.indent must be a non-negative integer")
        max_m = self.get("threshold.max_m")
        if isinstance(max_m, bool) or not isinstance(max_m, int) or max_m < 54:
            found.append("threshold.max_m must be an integer of at least 54")
        if not isinstance(self.get("storage.base_dir"), str):
            found.append("storage.base_dir must be a path string")
        return found

    def validate(self) -> bool:
        """Validate configuration, logging each problem."""
        problems = self.problems()
        for problem in problems:
            logger.error(f"Invalid configuration: {problem}")
        return not problems

    def log_level(self, override: Optional[str] = None) -> str:
        """Effective log level: explicit override, config file, environment."""
        if override:
            return override.upper()
        if isinstance(self.file_data.get("logging"), dict) and (
            "level" in self.file_data["logging"]
        ):
            return str(self.get("logging.level")).upper()
        return os.environ.get(LOG_LEVEL_ENV_VAR, self.get("logging.level")).upper()

