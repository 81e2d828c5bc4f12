# scalediff/cli/main.py

"""
Main entry point for the scalediff CLI.
"""

import logging

import click

from scalediff.version import __version__
from .base_cmd import ConfigGroup, quiet_option, verbose_option
from .detect_cmd import detect_cmd
from .evaluate_cmd import evaluate_cmd
from .generate_cmd import generate_cmd
from .scan_cmd import scan_cmd

logger = logging.getLogger(__name__)

CONTEXT_SETTINGS = dict(help_option_names=['-h', '--help'])


@click.group(context_settings=CONTEXT_SETTINGS, cls=ConfigGroup)
@click.version_option(__version__, '-V', '--version', package_name='scalediff', prog_name='scalediff')
@verbose_option
@quiet_option
@click.pass_context
def main_cli(ctx, verbose: int, quiet: bool):
    """
    scalediff: detect GUI scaling issues by comparing view-tree snapshots of
    a page at the default scale and at a larger display/font scale.

    Configuration is loaded from:
    Defaults -> ./scalediff.toml -> ~/.config/scalediff/scalediff.toml -> --config -> Env Vars

    Use -v for verbose output, -vv for debug output, -q for quiet mode.
    """
    logger.debug(f"scalediff CLI invoked (verbose={verbose}, quiet={quiet}).")


main_cli.add_command(detect_cmd)
main_cli.add_command(scan_cmd)
main_cli.add_command(evaluate_cmd)
main_cli.add_command(generate_cmd)

cli = main_cli

if __name__ == "__main__":
    cli()
