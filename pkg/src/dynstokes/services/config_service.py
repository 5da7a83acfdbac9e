"""
Configuration service for dynstokes
"""

import copy
import logging
from typing import Any, Dict, Iterable, Optional

import yaml

from ..models.run_config import RunConfig
from ..utils.config import load_config, parse_override, resolve_config_path

logger = logging.getLogger(__name__)


class ConfigService:
    """
    Service for configuration operations

    Values come from the YAML file first, then from overrides set on the
    service; everything else falls back to the RunConfig defaults.
    """

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize the service

        Args:
            config_file: Path to the configuration file (optional, see
                DYNSTOKES_CONFIG_PATH)
        """
        self.config_file, _ = resolve_config_path(config_file)
        self.config = self._load_config(config_file)

    def _load_config(self, config_file: Optional[str]) -> Dict[str, Any]:
        """
        Load configuration from file

        Returns:
            Configuration dictionary
        """
        config = load_config(config_file)
        logger.debug(f"Loaded {len(config)} configuration sections from {self.config_file}")
        return config

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value

        Args:
            key: Configuration key (dot-separated for nested keys)
            default: Default value if key is not found

        Returns:
            Configuration value
        """
        keys = key.split(".")
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def set(self, key: str, value: Any) -> None:
        """
        Set a configuration value

        Args:
            key: Configuration key (dot-separated for nested keys)
            value: Configuration value
        """
        keys = key.split(".")
        config = self.config

        # Handle simple case
        if len(keys) == 1:
            config[keys[0]] = value
            return

        # Handle nested case
        for k in keys[:-1]:
            if k not in config or not isinstance(config[k], dict):
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value

    def apply_overrides(self, overrides: Iterable[str]) -> None:
        """
        Apply KEY=VALUE overrides (values parsed as YAML scalars)

        Args:
            overrides: Override strings, later ones win
        """
        for item in overrides or []:
            key, value = parse_override(item)
            logger.debug(f"Override {key}={value!r}")
            self.set(key, value)

    def run_config(self, command: Optional[str] = None) -> RunConfig:
        """
        Validate the configuration

        Args:
            command: Subcommand to record in the configuration (optional)

        Returns:
            RunConfig (raises pydantic.ValidationError when invalid)
        """
        data = copy.deepcopy(self.config)
        if command is not None:
            data["command"] = command
        return RunConfig.model_validate(data)

    def resolved(self, command: Optional[str] = None) -> Dict[str, Any]:
        """Fully resolved configuration, defaults included, as plain data"""
        return self.run_config(command).model_dump(mode="json")

    def save(self) -> None:
        """
        Save configuration to file
        """
        with open(self.config_file, "w") as f:
            yaml.dump(self.config, f, default_flow_style=False)
