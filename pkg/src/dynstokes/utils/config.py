"""
Configuration utilities for dynstokes
"""

import os

import yaml

CONFIG_ENV_VAR = "DYNSTOKES_CONFIG_PATH"
DEFAULT_CONFIG_FILE = "config.yaml"


class ConfigFileError(ValueError):
    """Raised when a configuration file cannot be read or parsed"""


def resolve_config_path(config_path=None):
    """
    Resolve the configuration file to use

    Args:
        config_path: Explicit path (optional)

    Returns:
        Tuple (path, explicit) where explicit tells whether the path was
        requested by the caller or the environment
    """
    if config_path is not None:
        return config_path, True
    if os.environ.get(CONFIG_ENV_VAR):
        return os.environ[CONFIG_ENV_VAR], True
    return DEFAULT_CONFIG_FILE, False


def load_config(config_path=None):
    """
    Load configuration from YAML file

    A missing default file yields an empty configuration; a missing file
    that was asked for explicitly, or one that does not parse, is an error.

    Args:
        config_path: Path to the configuration file (optional)

    Returns:
        Configuration dictionary
    """
    # Check for config path in environment variable
    path, explicit = resolve_config_path(config_path)

    if not os.path.exists(path):
        if explicit:
            raise ConfigFileError(f"configuration file not found: {path}")
        return {}

    try:
        with open(path, "r") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigFileError(f"configuration file {path} is not valid YAML: {e}")

    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ConfigFileError(f"configuration file {path} must hold a mapping of sections")
    return config


def parse_override(item):
    """
    Split a KEY=VALUE override and parse the value as a YAML scalar

    Args:
        item: Override text, e.g. 'problem.alpha=1' or 'sweep.alphas=[0, 1]'

    Returns:
        Tuple (key, value)
    """
    key, sep, text = item.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigFileError(f"override must look like KEY=VALUE, got {item!r}")
    try:
        value = yaml.safe_load(text) if text.strip() else None
    except yaml.YAMLError as e:
        raise ConfigFileError(f"cannot parse value of override {key}: {e}")
    return key, value
