# scalediff/cli/evaluate_cmd.py

"""
CLI command scoring the detector on a labeled corpus directory.
"""

import logging
from pathlib import Path
from typing import Optional

import click

from scalediff.core.corpus import evaluate_directory, per_case_table
from scalediff.core.evaluation import score_results
from .base_cmd import config_option, resolve_config, translate_errors, workers_option
from .detect_cmd import write_json

logger = logging.getLogger(__name__)


@click.command("evaluate")
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False))
@click.option("-l", "--labels", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Ground-truth labels (defaults to CORPUS_DIR/labels.json).")
@config_option
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None,
              help="Write the metrics JSON to this file instead of stdout.")
@click.option("--per-case", type=click.Path(dir_okay=False), default=None,
              help="Write a per-case CSV table for error analysis.")
@workers_option
@click.pass_context
@translate_errors
def evaluate_cmd(
    ctx,
    corpus_dir: str,
    labels: Optional[str],
    config_file: Optional[str],
    out: Optional[str],
    per_case: Optional[str],
    workers: Optional[int],
):
    """
    Compute page- and view-level precision, recall and F1 over CORPUS_DIR.
    """
    config = resolve_config(ctx, config_file)
    workers = workers or config.evaluation.workers
    results = evaluate_directory(corpus_dir, labels, config.detection, workers)
    metrics = score_results(results)

    if per_case is not None:
        table_path = Path(per_case)
        table_path.parent.mkdir(parents=True, exist_ok=True)
        per_case_table(results).to_csv(table_path, index=False)
        logger.info(f"Per-case table written to {table_path}")

    write_json(metrics.model_dump(mode="json"), out)
    if out is not None:
        bug = metrics.page["Bug"]
        click.echo(f"Evaluated {metrics.cases} case(s): page Bug P={bug.precision:.3f} R={bug.recall:.3f}; "
                   f"metrics written to {out}")
