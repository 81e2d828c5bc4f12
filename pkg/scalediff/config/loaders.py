# scalediff/config/loaders.py

"""
Functions for loading and merging scalediff configuration from various sources.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import toml
from pydantic import ValidationError

from scalediff.core.errors import InvalidConfig
from .models import FLAT_DETECTION_KEYS, ScaleDiffConfig

logger = logging.getLogger(__name__)

# --- Constants ---
ENV_PREFIX = "SCALEDIFF_"
USER_CONFIG_DIR = Path("~/.config/scalediff").expanduser()
USER_CONFIG_FILE = USER_CONFIG_DIR / "scalediff.toml"
PROJECT_CONFIG_FILE = Path("./scalediff.toml")
SECTIONS = ("detection", "evaluation", "paths", "logging")

# --- Helper Functions ---

def _read_config_file(filepath: Path) -> Dict[str, Any]:
    """Parses a TOML or JSON config file (chosen by extension)."""
    with open(filepath, 'r', encoding='utf-8') as f:
        if filepath.suffix.lower() == ".json":
            document = json.load(f)
        else:
            document = toml.load(f)
    if not isinstance(document, dict):
        raise ValueError("top-level value must be a table/object")
    return document


def _load_optional_file(filepath: Path) -> Dict[str, Any]:
    """Loads an implicit config file if it exists; problems are logged and skipped."""
    if not filepath.is_file():
        return {}
    try:
        return _read_config_file(filepath)
    except (toml.TomlDecodeError, json.JSONDecodeError, ValueError) as e:
        logger.warning(f"Error decoding config file '{filepath}': {e}. Skipping.")
    except OSError as e:
        logger.warning(f"Could not read config file '{filepath}': {e}. Skipping.")
    return {}


def _load_explicit_file(filepath: Path) -> Dict[str, Any]:
    if not filepath.is_file():
        raise InvalidConfig(f"Config file not found: {filepath}")
    try:
        return _read_config_file(filepath)
    except (toml.TomlDecodeError, json.JSONDecodeError, ValueError, OSError) as e:
        raise InvalidConfig(f"Could not parse config file '{filepath}': {e}") from e


def _fold_flat_keys(document: Dict[str, Any]) -> Dict[str, Any]:
    """Moves top-level detection keys (flat form) into the [detection] section."""
    folded = {key: value for key, value in document.items() if key not in FLAT_DETECTION_KEYS}
    flat = {key: document[key] for key in FLAT_DETECTION_KEYS if key in document}
    if flat:
        detection = dict(folded.get("detection", {}))
        detection.update(flat)
        folded["detection"] = detection
    return folded


def _deep_merge_dicts(base: Dict, update: Dict) -> Dict:
    """Recursively merges 'update' dict into 'base' dict."""
    merged = base.copy()
    for key, value in update.items():
        if isinstance(value, dict) and key in merged and isinstance(merged[key], dict):
            merged[key] = _deep_merge_dicts(merged[key], value)
        else:
            merged[key] = value
    return merged


def _parse_env_value(value: str) -> Any:
    if value.lower() in ('true', 'false'):
        return value.lower() == 'true'
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    return value


def _get_config_from_env() -> Dict[str, Any]:
    """
    Reads SCALEDIFF_<SECTION>_<KEY> environment variables.

    The first token after the prefix names the section; the rest is the key,
    so keys may themselves contain underscores (SCALEDIFF_DETECTION_AREA_TOLERANCE).
    """
    env_config: Dict[str, Any] = {}
    for env_var, value in os.environ.items():
        if not env_var.startswith(ENV_PREFIX):
            continue
        section, _, key = env_var[len(ENV_PREFIX):].lower().partition('_')
        if section not in SECTIONS or not key:
            logger.debug(f"Ignoring environment variable {env_var}")
            continue
        env_config.setdefault(section, {})[key] = _parse_env_value(value)
    return env_config


# --- Main Loading Function ---

def load_configuration(
    config_file: Optional[Union[str, Path]] = None,
    disable_project_config: bool = False,
    disable_user_config: bool = False,
) -> ScaleDiffConfig:
    """
    Loads scalediff configuration from defaults, files, and environment variables.

    Precedence (highest first):
    1. Environment Variables (SCALEDIFF_*)
    2. Explicit config file (`--config`, TOML or JSON)
    3. User Config File (~/.config/scalediff/scalediff.toml)
    4. Project Config File (./scalediff.toml)
    5. Internal Defaults (from Pydantic models)

    Args:
        config_file: Explicit config file path.
        disable_project_config: If True, ignores ./scalediff.toml.
        disable_user_config: If True, ignores ~/.config/scalediff/scalediff.toml.

    Returns:
        A validated ScaleDiffConfig object. Invalid implicit configuration
        falls back to defaults with a logged error.

    Raises:
        InvalidConfig: The explicit config file is missing, unparsable, or
            the merged configuration fails validation.
    """
    merged_config_dict: Dict[str, Any] = {}

    if not disable_project_config:
        logger.debug(f"Attempting to load project config: {PROJECT_CONFIG_FILE}")
        project_cfg = _load_optional_file(PROJECT_CONFIG_FILE)
        if project_cfg:
            logger.info(f"Loaded project configuration from {PROJECT_CONFIG_FILE}")
            merged_config_dict = _deep_merge_dicts(merged_config_dict, _fold_flat_keys(project_cfg))

    if not disable_user_config:
        logger.debug(f"Attempting to load user config: {USER_CONFIG_FILE}")
        user_cfg = _load_optional_file(USER_CONFIG_FILE)
        if user_cfg:
            logger.info(f"Loaded user configuration from {USER_CONFIG_FILE}")
            merged_config_dict = _deep_merge_dicts(merged_config_dict, _fold_flat_keys(user_cfg))

    if config_file is not None:
        explicit_path = Path(config_file)
        explicit_cfg = _load_explicit_file(explicit_path)
        logger.info(f"Loaded configuration from {explicit_path}")
        merged_config_dict = _deep_merge_dicts(merged_config_dict, _fold_flat_keys(explicit_cfg))

    env_cfg = _get_config_from_env()
    if env_cfg:
        logger.debug(f"Applying environment variable configuration: {env_cfg}")
        merged_config_dict = _deep_merge_dicts(merged_config_dict, env_cfg)

    try:
        final_config = ScaleDiffConfig(**merged_config_dict)
        logger.debug("Configuration loaded and validated successfully.")
        return final_config
    except ValidationError as e:
        if config_file is not None:
            raise InvalidConfig(f"Invalid configuration in '{config_file}':\n{e}") from e
        logger.error(f"Configuration validation failed:\n{e}")
        logger.warning("Falling back to default configuration due to validation errors.")
        return ScaleDiffConfig()
