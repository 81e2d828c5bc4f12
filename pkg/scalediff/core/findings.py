# scalediff/core/findings.py

"""
Finding and Report models, the detector-kind to issue-category mapping, and
canonical report serialization.
"""

import hashlib
import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class FindingKind(str, Enum):
    """Which detector produced the finding."""
    VISIBILITY_INCONSISTENCY = "VisibilityInconsistency"
    MISSING_COUNTERPART = "MissingCounterpart"
    OVERLAP_INCONSISTENCY = "OverlapInconsistency"
    CROP_INCONSISTENCY = "CropInconsistency"
    TEXT_SCALE_ANOMALY = "TextScaleAnomaly"
    NON_TEXT_ANOMALY = "NonTextAnomaly"


class IssueCategory(str, Enum):
    """User-facing scaling issue category."""
    COMPONENT_OVERLAPPING = "ComponentOverlapping"
    CONTENT_OVERLAPPING = "ContentOverlapping"
    COMPONENT_CROPPING = "ComponentCropping"
    CONTENT_CROPPING = "ContentCropping"
    COMPONENT_MISSING = "ComponentMissing"


_CATEGORY_BY_KIND: Dict[FindingKind, IssueCategory] = {
    FindingKind.OVERLAP_INCONSISTENCY: IssueCategory.COMPONENT_OVERLAPPING,
    FindingKind.CROP_INCONSISTENCY: IssueCategory.COMPONENT_CROPPING,
    FindingKind.TEXT_SCALE_ANOMALY: IssueCategory.CONTENT_CROPPING,
    FindingKind.NON_TEXT_ANOMALY: IssueCategory.CONTENT_CROPPING,
    FindingKind.VISIBILITY_INCONSISTENCY: IssueCategory.COMPONENT_MISSING,
    FindingKind.MISSING_COUNTERPART: IssueCategory.COMPONENT_MISSING,
}


def categorize(kind: FindingKind, text_pair: bool = False) -> IssueCategory:
    """Category for a finding kind; overlapping text views are content overlap."""
    if kind == FindingKind.OVERLAP_INCONSISTENCY and text_pair:
        return IssueCategory.CONTENT_OVERLAPPING
    return _CATEGORY_BY_KIND[kind]


class Finding(BaseModel):
    """
    One inconsistency between the default and the scaled tree.

    `views` maps "default" and "scaled" to the 1-2 affected uids in each tree
    (empty when the view has no counterpart there).
    """
    model_config = ConfigDict(frozen=True)

    kind: FindingKind
    category: IssueCategory
    views: Dict[str, List[str]]
    evidence: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def create(
        cls,
        kind: FindingKind,
        default: List[str],
        scaled: List[str],
        evidence: Optional[Dict[str, Any]] = None,
        text_pair: bool = False,
    ) -> "Finding":
        return cls(
            kind=kind,
            category=categorize(kind, text_pair),
            views={"default": list(default), "scaled": list(scaled)},
            evidence=evidence or {},
        )

    @property
    def view_uids(self) -> List[str]:
        """Union of affected uids across both trees, default first."""
        seen: List[str] = []
        for uid in self.views.get("default", []) + self.views.get("scaled", []):
            if uid not in seen:
                seen.append(uid)
        return seen


class Diagnostic(BaseModel):
    """A per-view kernel failure that was skipped instead of aborting."""
    phase: str
    uid: str
    error: str


class Report(BaseModel):
    """Analysis result for one default/scaled snapshot pair."""
    verdict: str
    findings: List[Finding] = Field(default_factory=list)
    stats: Dict[str, int] = Field(default_factory=dict)
    diagnostics: List[Diagnostic] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)
    scale: Optional[str] = None

    @classmethod
    def from_findings(
        cls,
        findings: List[Finding],
        diagnostics: Optional[List[Diagnostic]] = None,
        timings: Optional[Dict[str, float]] = None,
        scale: Optional[str] = None,
    ) -> "Report":
        stats = {category.value: 0 for category in IssueCategory}
        for finding in findings:
            stats[finding.category.value] += 1
        return cls(
            verdict="Buggy" if findings else "Clean",
            findings=findings,
            stats=stats,
            diagnostics=diagnostics or [],
            timings=timings or {},
            scale=scale,
        )

    @property
    def is_buggy(self) -> bool:
        return self.verdict == "Buggy"

    def buggy_uids(self) -> List[str]:
        uids: List[str] = []
        for finding in self.findings:
            for uid in finding.view_uids:
                if uid not in uids:
                    uids.append(uid)
        return uids

    def canonical_json(self) -> str:
        """Deterministic JSON without timings."""
        payload = self.model_dump(mode="json", exclude={"timings"})
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def canonical_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()
