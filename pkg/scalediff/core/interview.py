# scalediff/core/interview.py

"""
Inter-view analysis of a single view tree (visibility, sibling overlap,
parent cropping) and the cross-tree consistency comparison.

Every visible view carries a "visible matrix": a boolean mask in the view's
own local coordinates marking the pixels it still shows on screen. The mask
starts as the view's alpha > 0 and is eroded as occlusion by later-drawn
siblings and clipping by the parent are discovered.
"""

import logging
from typing import Dict, FrozenSet, List, Optional, Set

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import DegenerateTemplate, ScaleDiffError
from .findings import Diagnostic, Finding, FindingKind
from .imaging import iou, template_match, visible_matrix
from .pairing import ViewPairing
from .snapshot.models import Rect, Snapshot, ViewNode
from .snapshot.tree import draw_order, preorder

logger = logging.getLogger(__name__)

DEFAULT_SCROLLABLE_CLASSES = frozenset({"ScrollView", "RecyclerView", "ListView", "ViewPager"})
DEFAULT_COLLAPSIBLE_CLASSES = frozenset({"DrawerLayout"})


# --- Types ---

class ExemptionConfig(BaseModel):
    """
    Class-name substrings that exempt containers from crop and overlap checks.

    Matching is case-sensitive substring search, so subclasses such as
    NestedScrollView match "ScrollView".
    """
    model_config = ConfigDict(frozen=True)

    scrollable_classes: FrozenSet[str] = Field(default=DEFAULT_SCROLLABLE_CLASSES, min_length=1)
    collapsible_classes: FrozenSet[str] = Field(default=DEFAULT_COLLAPSIBLE_CLASSES, min_length=1)

    def is_scrollable(self, node: ViewNode) -> bool:
        """An explicit scrollHint overrides the class-name rule."""
        if node.scroll_hint is not None:
            return node.scroll_hint
        return any(token in node.class_name for token in self.scrollable_classes)

    def is_collapsible(self, node: ViewNode) -> bool:
        return any(token in node.class_name for token in self.collapsible_classes)


class InterViewState(BaseModel):
    """Per-tree visibility, visible matrices, overlaps and crops."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    visible: Set[str] = Field(default_factory=set)
    matrices: Dict[str, np.ndarray] = Field(default_factory=dict)
    # unordered sibling pair -> contested pixel count
    overlaps: Dict[FrozenSet[str], int] = Field(default_factory=dict)
    # child uid -> pixels lost to the parent's clip
    crops: Dict[str, int] = Field(default_factory=dict)
    text_uids: Set[str] = Field(default_factory=set)
    mapping_ids: Dict[str, str] = Field(default_factory=dict)
    diagnostics: List[Diagnostic] = Field(default_factory=list)

    def matrix_area(self, uid: str) -> int:
        return int(self.matrices[uid].sum())


# --- Helpers ---

def _local(region: Rect, owner: Rect):
    """Array slices of `region` inside the image of the view with bounds `owner`."""
    return region.relative_to(owner).slices()


def _is_visible_in(parent: ViewNode, child: ViewNode, snap: Snapshot) -> bool:
    """Template-matches the in-parent part of `child` against the parent image."""
    inside = child.bounds.intersect(parent.bounds)
    if inside.is_empty:
        logger.debug(f"View '{child.uid}' lies outside its parent; invisible.")
        return False

    sliced = snap.image_of(child)[_local(inside, child.bounds)]
    expected = inside.relative_to(parent.bounds)
    try:
        match = template_match(snap.image_of(parent), sliced)
    except DegenerateTemplate:
        logger.debug(f"View '{child.uid}' has uniform content; deemed visible.")
        return True

    found = Rect(x=match.best_loc[0], y=match.best_loc[1], w=expected.w, h=expected.h)
    overlap_ratio = iou(found, expected)
    logger.debug(
        f"View '{child.uid}': best match at {match.best_loc} (score {match.best_score:.4f}), "
        f"expected ({expected.x},{expected.y}), IoU {overlap_ratio:.4f}"
    )
    return overlap_ratio == 1.0


# --- Per-tree detection ---

def detect_visibility(snap: Snapshot, diagnostics: Optional[List[Diagnostic]] = None) -> Set[str]:
    """
    Uids of the views whose pixels survive in their parent's composite.

    The root is visible. Children of an invisible parent are invisible. A
    child of a visible parent is visible iff its in-parent slice is found by
    template matching at exactly its expected position (IoU 1.0). Kernel
    failures on one view are recorded in `diagnostics` and the view is kept
    visible.
    """
    visible: Set[str] = {snap.root.uid}
    for parent in preorder(snap.root):
        if parent.uid not in visible:
            continue
        for child in parent.children:
            try:
                shown = _is_visible_in(parent, child, snap)
            except ScaleDiffError as e:
                logger.warning(f"Visibility check failed for view '{child.uid}': {e}")
                if diagnostics is not None:
                    diagnostics.append(Diagnostic(phase="visibility", uid=child.uid, error=str(e)))
                shown = True
            if shown:
                visible.add(child.uid)
    logger.debug(f"{len(visible)} of {len(snap.nodes)} views visible.")
    return visible


def detect_overlaps(
    snap: Snapshot,
    visible: Set[str],
    exemptions: Optional[ExemptionConfig] = None,
) -> InterViewState:
    """
    Builds the initial state and records overlaps between visible siblings.

    Siblings are walked in draw order; each later-drawn view is compared with
    every earlier-drawn one. The earlier view loses the contested pixels from
    its visible matrix. Pairs involving a collapsible view are skipped.
    """
    exemptions = exemptions or ExemptionConfig()
    state = InterViewState(
        visible=set(visible),
        text_uids={node.uid for node in preorder(snap.root) if node.is_text},
        mapping_ids={node.uid: node.mapping_id for node in preorder(snap.root) if node.mapping_id},
    )
    for node in preorder(snap.root):
        if node.uid in visible:
            state.matrices[node.uid] = visible_matrix(snap.image_of(node)).copy()

    for parent in preorder(snap.root):
        if parent.uid not in visible:
            continue
        siblings = [c for c in draw_order(parent) if c.uid in visible and not exemptions.is_collapsible(c)]
        for j, later in enumerate(siblings):
            for earlier in siblings[:j]:
                region = earlier.bounds.intersect(later.bounds)
                if region.is_empty:
                    continue
                earlier_slice = _local(region, earlier.bounds)
                contested = (state.matrices[earlier.uid][earlier_slice]
                             & state.matrices[later.uid][_local(region, later.bounds)])
                area = int(contested.sum())
                if area == 0:
                    continue
                state.overlaps[frozenset((earlier.uid, later.uid))] = area
                state.matrices[earlier.uid][earlier_slice] &= ~contested
                logger.debug(f"Overlap of {area} px: '{later.uid}' drawn over '{earlier.uid}'.")
    return state


def detect_crops(
    snap: Snapshot,
    state: InterViewState,
    exemptions: Optional[ExemptionConfig] = None,
) -> InterViewState:
    """
    Records visible children that lose content to their parent's clip.

    Availability inside the parent is the parent's own visible matrix as
    captured, so pixels lost to sibling overlap do not count as cropped.
    Children of scrollable parents are exempt.
    """
    exemptions = exemptions or ExemptionConfig()
    for parent in preorder(snap.root):
        if parent.uid not in state.visible or exemptions.is_scrollable(parent):
            continue
        available = visible_matrix(snap.image_of(parent))
        for child in parent.children:
            if child.uid not in state.visible:
                continue
            current = state.matrices[child.uid]
            before = int(current.sum())
            if before == 0:
                continue
            inside = child.bounds.intersect(parent.bounds)
            kept = np.zeros_like(current)
            if not inside.is_empty:
                child_slice = _local(inside, child.bounds)
                kept[child_slice] = current[child_slice] & available[_local(inside, parent.bounds)]
            after = int(kept.sum())
            if after < before:
                state.crops[child.uid] = before - after
                logger.debug(f"View '{child.uid}' cropped by '{parent.uid}': {before - after} px lost.")
            state.matrices[child.uid] = kept
    return state


def analyze_tree(
    snap: Snapshot,
    exemptions: Optional[ExemptionConfig] = None,
) -> InterViewState:
    """Runs visibility, overlap and crop detection on one tree."""
    diagnostics: List[Diagnostic] = []
    visible = detect_visibility(snap, diagnostics)
    state = detect_overlaps(snap, visible, exemptions)
    state = detect_crops(snap, state, exemptions)
    state.diagnostics.extend(diagnostics)
    logger.info(
        f"Inter-view analysis ({snap.scale.label}): {len(state.visible)} visible, "
        f"{len(state.overlaps)} overlaps, {len(state.crops)} crops"
    )
    return state


# --- Cross-tree comparison ---

def _evidence(uids_a: List[str], uids_b: List[str], a: InterViewState, b: InterViewState) -> Dict[str, object]:
    mapping_ids = sorted({a.mapping_ids[u] for u in uids_a if u in a.mapping_ids}
                         | {b.mapping_ids[u] for u in uids_b if u in b.mapping_ids})
    return {"mappingIds": mapping_ids}


def _overlap_findings(
    source: InterViewState,
    other: InterViewState,
    to_other: Dict[str, str],
    source_is_default: bool,
) -> List[Finding]:
    findings: List[Finding] = []
    for pair in sorted(source.overlaps, key=sorted):
        first, second = sorted(pair)
        if first not in to_other or second not in to_other:
            continue
        mapped = frozenset((to_other[first], to_other[second]))
        if mapped in other.overlaps:
            continue
        mapped_uids = [to_other[first], to_other[second]]
        default, scaled = ([first, second], mapped_uids) if source_is_default else (mapped_uids, [first, second])
        a_state, b_state = (source, other) if source_is_default else (other, source)
        evidence = _evidence(default, scaled, a_state, b_state)
        evidence.update({
            "overlapArea": source.overlaps[pair],
            "tree": "default" if source_is_default else "scaled",
        })
        findings.append(Finding.create(
            FindingKind.OVERLAP_INCONSISTENCY,
            default,
            scaled,
            evidence,
            text_pair=first in source.text_uids and second in source.text_uids,
        ))
    return findings


def compare_inter(a: InterViewState, b: InterViewState, pairing: ViewPairing) -> List[Finding]:
    """
    Findings for every status that differs between the default tree `a` and
    the scaled tree `b`: visibility, missing counterparts of visible default
    views, sibling overlaps and crops. Equal status on both sides is silent.
    """
    findings: List[Finding] = []
    a_to_b = pairing.a_to_b()

    for ua, ub in pairing.pairs:
        if (ua in a.visible) != (ub in b.visible):
            evidence = _evidence([ua], [ub], a, b)
            evidence.update({"visibleDefault": ua in a.visible, "visibleScaled": ub in b.visible})
            findings.append(Finding.create(FindingKind.VISIBILITY_INCONSISTENCY, [ua], [ub], evidence))

    duplicates = set(pairing.duplicates_a)
    for ua in pairing.unmatched_a:
        if ua in a.visible and ua not in duplicates:
            findings.append(Finding.create(FindingKind.MISSING_COUNTERPART, [ua], [], _evidence([ua], [], a, b)))

    findings.extend(_overlap_findings(a, b, a_to_b, source_is_default=True))
    findings.extend(_overlap_findings(b, a, pairing.b_to_a(), source_is_default=False))

    for ua, ub in pairing.pairs:
        if ua not in a.visible or ub not in b.visible:
            continue
        if (ua in a.crops) != (ub in b.crops):
            evidence = _evidence([ua], [ub], a, b)
            evidence.update({"croppedDefault": a.crops.get(ua, 0), "croppedScaled": b.crops.get(ub, 0)})
            findings.append(Finding.create(FindingKind.CROP_INCONSISTENCY, [ua], [ub], evidence))

    logger.info(f"Inter-view comparison produced {len(findings)} finding(s).")
    return findings
