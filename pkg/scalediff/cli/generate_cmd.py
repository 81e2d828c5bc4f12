# scalediff/cli/generate_cmd.py

"""
CLI command writing a synthetic ground-truth corpus.
"""

import logging
from typing import Optional

import click

from scalediff.core.fixtures import (
    QUICK_RETRIES,
    generate_corpus,
    load_fixture_specs,
    quick_corpus_specs,
    write_corpus,
)
from .base_cmd import translate_errors, workers_option

logger = logging.getLogger(__name__)


@click.command("generate")
@click.option("-s", "--spec", "spec_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Fixture spec JSON (one object or a list).")
@click.option("-o", "--out", type=click.Path(file_okay=False), required=True,
              help="Corpus directory to write.")
@click.option("--cases", type=click.IntRange(min=1), default=None,
              help="Quick mode: total number of cases [default: 60].")
@click.option("--buggy", type=click.IntRange(min=0), default=None,
              help="Quick mode: how many of the cases carry bugs [default: half].")
@click.option("--seed", type=int, default=None, help="Quick mode: corpus seed [default: 0].")
@click.option("--retries", type=click.IntRange(min=0), default=None,
              help="Rebuild attempts for a case whose injection finds no target.")
@workers_option
@click.pass_context
@translate_errors
def generate_cmd(
    ctx,
    spec_file: Optional[str],
    out: str,
    cases: Optional[int],
    buggy: Optional[int],
    seed: Optional[int],
    retries: Optional[int],
    workers: Optional[int],
):
    """
    Generate snapshot pairs and labels.json into OUT.

    With --spec the spec file drives generation; otherwise a mixed corpus of
    clean and buggy pages covering every issue category is built.
    """
    if spec_file is not None:
        if any(option is not None for option in (cases, buggy, seed)):
            raise click.UsageError("--cases/--buggy/--seed cannot be combined with --spec")
        specs = load_fixture_specs(spec_file)
        retries = retries or 0
    else:
        total = cases or 60
        if buggy is not None and buggy > total:
            raise click.UsageError(f"--buggy ({buggy}) cannot exceed --cases ({total})")
        specs = quick_corpus_specs(total, total // 2 if buggy is None else buggy, seed or 0)
        retries = QUICK_RETRIES if retries is None else retries

    generated = generate_corpus(specs, retries=retries, workers=workers or 1)
    write_corpus(generated, out)
    buggy_count = sum(1 for case in generated if case.label.verdict == "Buggy")
    click.echo(f"Generated {len(generated)} case(s) ({buggy_count} buggy) in {out}")
