# scalediff/cli/scan_cmd.py

"""
CLI command comparing every larger scale setting of a page (LD, LL) with its
default capture (DD).
"""

import logging
from typing import Optional

import click
from rich.console import Console

from scalediff.core.pipeline import scan_page
from .base_cmd import EXIT_CLEAN, EXIT_FINDINGS, config_option, resolve_config, translate_errors
from .detect_cmd import report_table, write_json

logger = logging.getLogger(__name__)


@click.command("scan")
@click.argument("page_dir", type=click.Path(exists=True, file_okay=False))
@config_option
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON scan report to this file instead of stdout.")
@click.option("--format", "output_format", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.pass_context
@translate_errors
def scan_cmd(ctx, page_dir: str, config_file: Optional[str], out: Optional[str], output_format: str):
    """
    Analyze PAGE_DIR/LD and PAGE_DIR/LL against PAGE_DIR/DD.

    The page is Buggy if any setting is. Exit codes as for detect.
    """
    config = resolve_config(ctx, config_file)
    scan = scan_page(page_dir, config.detection)

    if output_format == "text":
        console = Console()
        for label, report in scan.reports.items():
            console.print(report_table(report, title=f"DD vs {label}: {report.verdict}"))
        click.echo(f"Page verdict: {scan.verdict}")
        if out is not None:
            write_json(scan.model_dump(mode="json"), out)
    else:
        write_json(scan.model_dump(mode="json"), out)

    ctx.exit(EXIT_FINDINGS if scan.is_buggy else EXIT_CLEAN)
