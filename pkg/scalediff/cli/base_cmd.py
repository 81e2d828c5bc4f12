# scalediff/cli/base_cmd.py

"""
Base setup for CLI commands: configuration loading, logging initialization,
shared options and the mapping of errors to exit codes.

Exit codes: 0 clean, 1 findings present, 2 error.
"""

import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

import click

from scalediff.config import ScaleDiffConfig, load_configuration
from scalediff.core.errors import ScaleDiffError
from scalediff.utils.logging_config import setup_logging

logger = logging.getLogger(__name__)

EXIT_CLEAN = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2


class CommandError(click.ClickException):
    """A failure reported to the user on stderr with exit code 2."""
    exit_code = EXIT_ERROR


class ConfigGroup(click.Group):
    """
    A Click Group that loads configuration and sets up logging before
    invoking its subcommands. The config is passed on as ctx.obj['config'].
    """
    def invoke(self, ctx: click.Context):
        if ctx.obj is None:
            ctx.obj = {}
        try:
            if 'config' not in ctx.obj:
                ctx.obj['config'] = load_configuration()
                verbosity = -1 if ctx.params.get('quiet') else ctx.params.get('verbose', 0)
                setup_logging(ctx.obj['config'], verbosity)
                logger.debug("Logging setup complete in ConfigGroup.")
            else:
                logger.debug("Configuration already loaded in context.")
        except Exception as e:
            logging.getLogger("scalediff.error").critical(f"Critical error during CLI setup: {e!r}", exc_info=True)
            print(f"CRITICAL SETUP ERROR: {e!r}", file=sys.stderr)
            ctx.exit(EXIT_ERROR)
        return super().invoke(ctx)


def resolve_config(ctx: click.Context, config_file: Optional[str]) -> ScaleDiffConfig:
    """The group's config, or a fresh load layering `config_file` on top."""
    if config_file is None:
        return ctx.obj['config']
    return load_configuration(config_file=Path(config_file))


def translate_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Maps scalediff errors and unexpected failures to exit code 2."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except ScaleDiffError as e:
            logger.debug(f"{type(e).__name__}: {e}")
            raise CommandError(f"{type(e).__name__}: {e}")
        except OSError as e:
            raise CommandError(str(e))
        except Exception as e:
            logger.error(f"Unexpected error: {e}", exc_info=True)
            raise CommandError(f"Unexpected error: {e!r}")
    return wrapper


# --- Common CLI Options ---
verbose_option = click.option(
    '-v', '--verbose',
    count=True,
    help="Increase verbosity level (-v for INFO, -vv for DEBUG)."
)
quiet_option = click.option(
    '-q', '--quiet',
    is_flag=True,
    default=False,
    help="Suppress all console output except the command's result."
)
config_option = click.option(
    '-c', '--config', 'config_file',
    type=click.Path(dir_okay=False),
    default=None,
    help="Detector config file (TOML or JSON); flat keys or a [detection] section."
)
workers_option = click.option(
    '-j', '--workers',
    type=click.IntRange(min=1),
    default=None,
    help="Worker threads (defaults to the configured value)."
)
