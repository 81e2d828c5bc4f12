# scalediff/core/corpus.py

"""
Batch evaluation over a corpus directory laid out as

    <corpus>/case-<n>/default/   snapshot at the default scale
    <corpus>/case-<n>/scaled/    snapshot at the larger scale
    <corpus>/labels.json         ground truth (see CorpusLabels)

Cases are processed in numeric order; an unreadable case aborts the run,
since metrics over a partial corpus would be misleading.
"""

import json
import logging
import re
from pathlib import Path
from typing import List, Optional, Tuple, Union

import pandas as pd
from pydantic import ValidationError

from scalediff.config.models import DetectionConfig
from .errors import LabelMismatch, MissingFile, SchemaViolation
from .evaluation import CaseLabel, CaseResult, CorpusLabels, evaluate_cases
from .snapshot.io import load_snapshot
from .snapshot.models import Snapshot

logger = logging.getLogger(__name__)

LABELS_FILENAME = "labels.json"
DEFAULT_DIRNAME = "default"
SCALED_DIRNAME = "scaled"
_CASE_PATTERN = re.compile(r"^case-(\d+)$")

PER_CASE_COLUMNS = [
    "case",
    "label_verdict",
    "predicted_verdict",
    "findings",
    "labeled_views",
    "predicted_views",
    "matched_views",
]


def load_labels(path: Union[str, Path]) -> CorpusLabels:
    """Reads labels.json; raises MissingFile or SchemaViolation."""
    labels_path = Path(path)
    if not labels_path.is_file():
        raise MissingFile(f"Labels file not found: {labels_path}")
    try:
        with open(labels_path, "r", encoding="utf-8") as f:
            return CorpusLabels.model_validate(json.load(f))
    except (json.JSONDecodeError, ValidationError) as e:
        raise SchemaViolation(f"{labels_path}: {e}") from e


def case_dirs(corpus_dir: Union[str, Path]) -> List[Path]:
    """`case-<n>` directories sorted by n."""
    corpus_path = Path(corpus_dir)
    if not corpus_path.is_dir():
        raise MissingFile(f"Corpus directory not found: {corpus_dir}")
    found = []
    for item in corpus_path.iterdir():
        match = _CASE_PATTERN.match(item.name)
        if item.is_dir() and match:
            found.append((int(match.group(1)), item))
        else:
            logger.debug(f"Skipping non-case item: {item.name}")
    return [path for _, path in sorted(found)]


def load_corpus(
    corpus_dir: Union[str, Path],
    labels: CorpusLabels,
) -> List[Tuple[str, Snapshot, Snapshot, CaseLabel]]:
    """
    Loads every labeled case of a corpus directory.

    Raises:
        LabelMismatch: A case directory has no label, or a label has no directory.
    """
    cases = []
    seen = set()
    for case_path in case_dirs(corpus_dir):
        name = case_path.name
        if name not in labels.cases:
            raise LabelMismatch(f"Case '{name}' has no entry in {LABELS_FILENAME}")
        default = load_snapshot(case_path / DEFAULT_DIRNAME)
        scaled = load_snapshot(case_path / SCALED_DIRNAME)
        cases.append((name, default, scaled, labels.cases[name]))
        seen.add(name)
    missing = sorted(set(labels.cases) - seen)
    if missing:
        raise LabelMismatch(f"Labels reference missing case directories: {missing}")
    logger.info(f"Loaded {len(cases)} case(s) from {corpus_dir}")
    return cases


def evaluate_directory(
    corpus_dir: Union[str, Path],
    labels_path: Optional[Union[str, Path]] = None,
    config: Optional[DetectionConfig] = None,
    workers: int = 1,
) -> List[CaseResult]:
    """Loads, analyzes and returns per-case results for a corpus directory."""
    labels = load_labels(labels_path or Path(corpus_dir) / LABELS_FILENAME)
    return evaluate_cases(load_corpus(corpus_dir, labels), config, workers)


def per_case_table(results: List[CaseResult]) -> pd.DataFrame:
    """One row per case for error analysis."""
    rows = []
    for result in results:
        labeled = set(result.label.buggy_views)
        predicted = result.predicted_views
        rows.append({
            "case": result.name,
            "label_verdict": result.label.verdict,
            "predicted_verdict": result.report.verdict,
            "findings": len(result.report.findings),
            "labeled_views": len(labeled),
            "predicted_views": len(predicted),
            "matched_views": len(labeled & predicted),
        })
    return pd.DataFrame(rows, columns=PER_CASE_COLUMNS)
