# scalediff/core/evaluation.py

"""
Corpus evaluation: precision, recall and F1 for the Bug and Clean classes at
page granularity (verdicts) and view granularity (buggy view uids).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Literal, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sklearn.metrics import precision_recall_fscore_support

from scalediff.config.models import DetectionConfig
from .errors import LabelMismatch
from .findings import Report
from .pipeline import analyze
from .snapshot.models import Snapshot

logger = logging.getLogger(__name__)

CLASSES = ("Bug", "Clean")


# --- Labels ---

class CaseLabel(BaseModel):
    """Ground truth for one case: page verdict and the uids of buggy views."""
    model_config = ConfigDict(populate_by_name=True)

    verdict: Literal["Buggy", "Clean"]
    buggy_views: List[str] = Field(default_factory=list, alias="buggyViews")
    categories: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _clean_has_no_views(self) -> "CaseLabel":
        if self.verdict == "Clean" and self.buggy_views:
            raise ValueError("a Clean case cannot list buggy views")
        if self.verdict == "Buggy" and not self.buggy_views:
            raise ValueError("a Buggy case must list at least one buggy view")
        return self


class CorpusLabels(BaseModel):
    """Contents of labels.json: case name -> label."""
    cases: Dict[str, CaseLabel] = Field(default_factory=dict)


# --- Metrics ---

class ClassMetrics(BaseModel):
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0
    support: int = 0


class CorpusMetrics(BaseModel):
    """Per-class metrics at page and view granularity."""
    cases: int = 0
    page: Dict[str, ClassMetrics] = Field(default_factory=lambda: {c: ClassMetrics() for c in CLASSES})
    view: Dict[str, ClassMetrics] = Field(default_factory=lambda: {c: ClassMetrics() for c in CLASSES})


class CaseResult(BaseModel):
    """A labeled case with its analysis report and the uids it contains."""
    name: str
    label: CaseLabel
    report: Report
    known_uids: Set[str]

    @property
    def predicted_views(self) -> Set[str]:
        return set(self.report.buggy_uids())


def _per_class(y_true: Sequence[str], y_pred: Sequence[str]) -> Dict[str, ClassMetrics]:
    if not y_true:
        return {c: ClassMetrics() for c in CLASSES}
    precision, recall, f1, support = precision_recall_fscore_support(
        list(y_true), list(y_pred), labels=list(CLASSES), zero_division=0
    )
    return {
        c: ClassMetrics(precision=float(precision[i]), recall=float(recall[i]), f1=float(f1[i]), support=int(support[i]))
        for i, c in enumerate(CLASSES)
    }


def _as_class(buggy: bool) -> str:
    return "Bug" if buggy else "Clean"


def score_results(results: List[CaseResult]) -> CorpusMetrics:
    """
    Computes corpus metrics from analyzed cases.

    Each view of a case (union of uids across both snapshots) is one
    view-level sample; it is predicted Bug iff some finding names it.

    Raises:
        LabelMismatch: A label names a uid present in neither snapshot.
    """
    page_true: List[str] = []
    page_pred: List[str] = []
    view_true: List[str] = []
    view_pred: List[str] = []

    for result in results:
        unknown = sorted(set(result.label.buggy_views) - result.known_uids)
        if unknown:
            raise LabelMismatch(f"Case '{result.name}' labels unknown view uid(s): {unknown}")
        page_true.append(_as_class(result.label.verdict == "Buggy"))
        page_pred.append(_as_class(result.report.is_buggy))

        labeled = set(result.label.buggy_views)
        predicted = result.predicted_views
        for uid in sorted(result.known_uids):
            view_true.append(_as_class(uid in labeled))
            view_pred.append(_as_class(uid in predicted))

    metrics = CorpusMetrics(cases=len(results), page=_per_class(page_true, page_pred), view=_per_class(view_true, view_pred))
    logger.info(
        f"Evaluated {len(results)} case(s): page Bug P={metrics.page['Bug'].precision:.3f} "
        f"R={metrics.page['Bug'].recall:.3f}; view Bug P={metrics.view['Bug'].precision:.3f} "
        f"R={metrics.view['Bug'].recall:.3f}"
    )
    return metrics


def evaluate_cases(
    cases: List[Tuple[str, Snapshot, Snapshot, CaseLabel]],
    config: Optional[DetectionConfig] = None,
    workers: int = 1,
) -> List[CaseResult]:
    """Analyzes every (name, default, scaled, label) case; cases may run in parallel."""
    def run(case: Tuple[str, Snapshot, Snapshot, CaseLabel]) -> CaseResult:
        name, default, scaled, label = case
        report = analyze(default, scaled, config)
        return CaseResult(name=name, label=label, report=report, known_uids=set(default.nodes) | set(scaled.nodes))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, cases))
    return [run(case) for case in cases]


def evaluate_corpus(
    cases: List[Tuple[str, Snapshot, Snapshot, CaseLabel]],
    config: Optional[DetectionConfig] = None,
    workers: int = 1,
) -> CorpusMetrics:
    """Analyzes and scores a labeled corpus held in memory."""
    return score_results(evaluate_cases(cases, config, workers))
