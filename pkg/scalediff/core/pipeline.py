# scalediff/core/pipeline.py

"""
End-to-end analysis of a default/scaled snapshot pair, and the page scan
that compares every larger scale setting of a page against its default.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field

from scalediff.config.models import DetectionConfig
from .errors import MissingFile, ScaleDiffError
from .findings import Diagnostic, Finding, Report
from .interview import InterViewState, analyze_tree, compare_inter
from .intraview import IntraCheckConfig, check_pair
from .pairing import ViewPairing, pair_views
from .snapshot.io import load_snapshot
from .snapshot.models import Snapshot

logger = logging.getLogger(__name__)

# Scale settings looked for inside a page directory; DD is the reference.
PAGE_SETTINGS = ("LD", "LL")
DEFAULT_SETTING = "DD"


# --- Helpers ---

def _analyze_trees(a: Snapshot, b: Snapshot, config: DetectionConfig) -> Tuple[InterViewState, InterViewState]:
    exemptions = config.to_exemptions()
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=2) as pool:
            future_a = pool.submit(analyze_tree, a, exemptions)
            future_b = pool.submit(analyze_tree, b, exemptions)
            return future_a.result(), future_b.result()
    return analyze_tree(a, exemptions), analyze_tree(b, exemptions)


def _intra_candidates(
    a: Snapshot,
    b: Snapshot,
    pairing: ViewPairing,
    state_a: InterViewState,
    state_b: InterViewState,
) -> List[Tuple[str, str]]:
    """Paired views that are visible leaves in both trees."""
    return [
        (ua, ub) for ua, ub in pairing.pairs
        if ua in state_a.visible and ub in state_b.visible
        and a.nodes[ua].is_leaf and b.nodes[ub].is_leaf
    ]


def _check_one(
    a: Snapshot,
    b: Snapshot,
    uids: Tuple[str, str],
    cfg: IntraCheckConfig,
) -> Tuple[Optional[Finding], Optional[Diagnostic]]:
    ua, ub = uids
    node_a, node_b = a.nodes[ua], b.nodes[ub]
    try:
        return check_pair(node_a, a.image_of(node_a), node_b, b.image_of(node_b), cfg), None
    except ScaleDiffError as e:
        logger.warning(f"Intra-view check failed for '{ua}'/'{ub}': {e}")
        return None, Diagnostic(phase="intra-view", uid=ua, error=str(e))


# --- Public API ---

def analyze(a: Snapshot, b: Snapshot, config: Optional[DetectionConfig] = None) -> Report:
    """
    Compares the default-scale snapshot `a` with the larger-scale snapshot `b`.

    Phases: view pairing, per-tree inter-view analysis, cross-tree comparison,
    then intra-view checks on every paired visible leaf. A kernel failure on
    one view is recorded as a diagnostic and the analysis continues.

    Args:
        a: Snapshot captured at the default scale.
        b: Snapshot captured at the larger scale.
        config: Detector configuration; defaults when omitted.

    Returns:
        Report whose verdict is Buggy iff any finding was produced.
    """
    config = config or DetectionConfig()
    timings: Dict[str, float] = {}
    started = time.perf_counter()

    logger.info(f"Analyzing {a.scale.label} vs {b.scale.label} ({len(a.nodes)} / {len(b.nodes)} views)")
    phase_start = time.perf_counter()
    pairing = pair_views(a, b)
    timings["pairing"] = time.perf_counter() - phase_start

    phase_start = time.perf_counter()
    state_a, state_b = _analyze_trees(a, b, config)
    findings = compare_inter(state_a, state_b, pairing)
    timings["inter_view"] = time.perf_counter() - phase_start

    phase_start = time.perf_counter()
    candidates = _intra_candidates(a, b, pairing, state_a, state_b)
    cfg = config.to_intra()
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(lambda uids: _check_one(a, b, uids, cfg), candidates))
    else:
        results = [_check_one(a, b, uids, cfg) for uids in candidates]
    timings["intra_view"] = time.perf_counter() - phase_start
    logger.info(f"Intra-view phase checked {len(candidates)} view pair(s).")

    diagnostics = state_a.diagnostics + state_b.diagnostics
    for finding, diagnostic in results:
        if finding is not None:
            findings.append(finding)
        if diagnostic is not None:
            diagnostics.append(diagnostic)

    timings["total"] = time.perf_counter() - started
    report = Report.from_findings(findings, diagnostics, timings, scale=b.scale.label)
    logger.info(f"Verdict {report.verdict}: {len(findings)} finding(s) in {timings['total']:.2f}s")
    return report


class ScanReport(BaseModel):
    """Reports for every larger scale setting of one page, keyed by setting label."""
    page: str
    verdict: str
    reports: Dict[str, Report] = Field(default_factory=dict)

    @property
    def is_buggy(self) -> bool:
        return self.verdict == "Buggy"


def scan_page(page_dir: Union[str, Path], config: Optional[DetectionConfig] = None) -> ScanReport:
    """
    Analyzes `<page>/LD` and `<page>/LL` (whichever exist) against `<page>/DD`.

    Raises:
        MissingFile: No DD capture, or no larger setting to compare with.
    """
    page_path = Path(page_dir)
    default = load_snapshot(page_path / DEFAULT_SETTING)
    settings = [label for label in PAGE_SETTINGS if (page_path / label).is_dir()]
    if not settings:
        raise MissingFile(f"No LD or LL capture next to {page_path / DEFAULT_SETTING}")

    reports: Dict[str, Report] = {}
    for label in settings:
        logger.info(f"Scanning {page_path.name}: DD vs {label}")
        reports[label] = analyze(default, load_snapshot(page_path / label), config)

    verdict = "Buggy" if any(report.is_buggy for report in reports.values()) else "Clean"
    return ScanReport(page=str(page_path), verdict=verdict, reports=reports)
