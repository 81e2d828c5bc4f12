# tests/conftest.py

"""
Shared fixtures: hand-made snapshot pairs, a two-case corpus on disk and a
CLI runner.
"""

import json

import pytest
from click.testing import CliRunner

from scalediff.cli.main import cli
from scalediff.config import ScaleDiffConfig
from scalediff.core.corpus import DEFAULT_DIRNAME, LABELS_FILENAME, SCALED_DIRNAME
from scalediff.core.snapshot.io import write_snapshot
from tests.factories import LARGE_SCALE, block_page


@pytest.fixture
def clean_pair():
    return block_page(), block_page(scale=LARGE_SCALE)


@pytest.fixture
def buggy_pair():
    return block_page(), block_page(with_extra=False, scale=LARGE_SCALE)


@pytest.fixture
def pair_dirs(tmp_path, clean_pair, buggy_pair):
    """{'clean': (default_dir, scaled_dir), 'buggy': (...)} written to disk."""
    dirs = {}
    for name, (default, scaled) in (("clean", clean_pair), ("buggy", buggy_pair)):
        dirs[name] = (write_snapshot(default, tmp_path / name / DEFAULT_DIRNAME),
                      write_snapshot(scaled, tmp_path / name / SCALED_DIRNAME))
    return dirs


@pytest.fixture
def corpus_dir(tmp_path, clean_pair, buggy_pair):
    """case-0 clean, case-1 missing view C, plus labels.json."""
    root = tmp_path / "corpus"
    for name, (default, scaled) in (("case-0", clean_pair), ("case-1", buggy_pair)):
        write_snapshot(default, root / name / DEFAULT_DIRNAME)
        write_snapshot(scaled, root / name / SCALED_DIRNAME)
    labels = {"cases": {
        "case-0": {"verdict": "Clean", "buggyViews": []},
        "case-1": {"verdict": "Buggy", "buggyViews": ["C"], "categories": ["ComponentMissing"]},
    }}
    (root / LABELS_FILENAME).write_text(json.dumps(labels), encoding="utf-8")
    return root


@pytest.fixture
def invoke():
    """Runs the CLI with default configuration, bypassing the user's config files."""
    runner = CliRunner()

    def run(*args):
        return runner.invoke(cli, [str(arg) for arg in args], obj={"config": ScaleDiffConfig()})
    return run
