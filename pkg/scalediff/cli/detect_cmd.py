# scalediff/cli/detect_cmd.py

"""
CLI command comparing one default-scale snapshot with one larger-scale
snapshot.
"""

import json
import logging
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from scalediff.core.findings import Report
from scalediff.core.pipeline import analyze
from scalediff.core.snapshot.io import load_snapshot
from scalediff.utils.visualizations import plot_findings
from .base_cmd import EXIT_CLEAN, EXIT_FINDINGS, config_option, resolve_config, translate_errors, workers_option

logger = logging.getLogger(__name__)


# --- Output helpers ---

def report_table(report: Report, title: str = "") -> Table:
    """Rich table with one row per finding."""
    table = Table(title=title or f"{report.verdict} ({len(report.findings)} finding(s))")
    table.add_column("#", justify="right")
    table.add_column("Category")
    table.add_column("Kind")
    table.add_column("Default")
    table.add_column("Scaled")
    table.add_column("Mapping ids")
    for index, finding in enumerate(report.findings):
        table.add_row(
            str(index),
            finding.category.value,
            finding.kind.value,
            ", ".join(finding.views.get("default", [])) or "-",
            ", ".join(finding.views.get("scaled", [])) or "-",
            ", ".join(finding.evidence.get("mappingIds", [])) or "-",
        )
    return table


def write_json(document: dict, out: Optional[str]):
    """Writes `document` to `out`, or to stdout when `out` is None."""
    text = json.dumps(document, indent=2, sort_keys=True)
    if out is None:
        click.echo(text)
        return
    out_path = Path(out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {out_path}")


def emit_report(report: Report, output_format: str, out: Optional[str]):
    if output_format == "text":
        Console().print(report_table(report))
        if out is not None:
            write_json(report.model_dump(mode="json"), out)
        return
    write_json(report.model_dump(mode="json"), out)
    if out is not None:
        click.echo(f"{report.verdict}: {len(report.findings)} finding(s); report written to {out}")


# --- Command ---

@click.command("detect")
@click.argument("default_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("scaled_dir", type=click.Path(exists=True, file_okay=False))
@config_option
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report to this file instead of stdout.")
@click.option("--format", "output_format", type=click.Choice(["json", "text"]), default="json", show_default=True,
              help="Report format on stdout.")
@click.option("--annotate", type=click.Path(dir_okay=False), default=None,
              help="Save a PNG of the scaled page with the findings boxed.")
@workers_option
@click.pass_context
@translate_errors
def detect_cmd(
    ctx,
    default_dir: str,
    scaled_dir: str,
    config_file: Optional[str],
    out: Optional[str],
    output_format: str,
    annotate: Optional[str],
    workers: Optional[int],
):
    """
    Detect scaling issues between DEFAULT_DIR (default scale) and SCALED_DIR
    (larger scale).

    Exit code 0 when clean, 1 when findings are present, 2 on error.
    """
    config = resolve_config(ctx, config_file)
    detection = config.detection
    if workers is not None:
        detection = detection.model_copy(update={"workers": workers})

    default = load_snapshot(default_dir)
    scaled = load_snapshot(scaled_dir)
    report = analyze(default, scaled, detection)

    emit_report(report, output_format, out)
    if annotate is not None:
        plot_findings(scaled, report, annotate)

    ctx.exit(EXIT_FINDINGS if report.is_buggy else EXIT_CLEAN)
