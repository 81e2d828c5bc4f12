# scalediff/utils/logging_config.py

"""
Configures logging for scalediff from the loaded settings: a Rich console
handler filtered by the CLI verbosity, plus an optional log file.
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from scalediff.config import ScaleDiffConfig
from scalediff.version import __version__

# --- Constants ---
# CLI verbosity -> console level
VERBOSITY_MAP = {
    0: logging.WARNING,
    1: logging.INFO,       # -v
    2: logging.DEBUG,      # -vv
    -1: logging.CRITICAL + 10,  # -q: above every level, nothing reaches the console
}

PACKAGE_LOGGER = "scalediff"


# --- Setup Function ---

def _file_handler(config: ScaleDiffConfig) -> Optional[Path]:
    """Attaches the file handler; returns the log path, or None if it failed."""
    log_cfg = config.logging
    logger = logging.getLogger(PACKAGE_LOGGER)
    try:
        log_dir = config.paths.log_directory
        log_dir.mkdir(parents=True, exist_ok=True)
        log_path = log_dir / log_cfg.log_filename_template.format(timestamp=datetime.now())

        handler = logging.FileHandler(log_path, encoding="utf-8")
        handler.setLevel(log_cfg.log_level_file)
        handler.setFormatter(logging.Formatter(log_cfg.log_format))
        logger.addHandler(handler)
        return log_path
    except (OSError, KeyError, ValueError) as e:
        logging.getLogger("scalediff.error").error(f"Failed to configure file logging: {e}", exc_info=True)
        return None


def setup_logging(config: ScaleDiffConfig, verbosity: int = 0):
    """
    Configures the `scalediff` logger.

    Args:
        config: The loaded ScaleDiffConfig.
        verbosity: 0 normal, 1 verbose, 2 debug, -1 quiet. Larger values
                   count as debug.
    """
    console_level = VERBOSITY_MAP.get(verbosity, logging.DEBUG if verbosity > 2 else logging.WARNING)

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    package_logger.setLevel(logging.DEBUG)  # handlers filter
    package_logger.handlers.clear()
    package_logger.propagate = False

    # --- Console Handler (Rich) ---
    if console_level <= logging.CRITICAL:
        # stdout carries reports; log records go to stderr
        console_handler = RichHandler(
            console=Console(stderr=True),
            level=console_level,
            show_time=False,
            show_level=True,
            show_path=False,
            rich_tracebacks=True,
            markup=False,
        )
        console_handler.setFormatter(logging.Formatter("%(message)s"))
        package_logger.addHandler(console_handler)

    # --- File Handler ---
    log_path = _file_handler(config) if config.logging.log_file_enabled else None

    init_logger = logging.getLogger("scalediff.init")
    init_logger.info(f"scalediff v{__version__} initialized.")
    if log_path is not None:
        init_logger.info(f"Logging to file: {log_path}")
        init_logger.debug(f"Console level {logging.getLevelName(console_level)}, file level {config.logging.log_level_file}")
        init_logger.debug(f"Configuration: {config.model_dump()}")
