# scalediff/core/fixtures/inject.py

"""
Bug injection into a laid-out larger-scale page.

Every injection edits the scaled tree after layout and before rendering, and
returns the uids a correct detector is expected to name. Injections only
touch widgets of the content rows, and two injections of one case never share
a row, so each label set stays attributable to a single bug.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Set, Tuple

import numpy as np

from ..errors import InjectionInfeasible
from ..findings import IssueCategory
from .layout import LaidOutView
from .spec import BugInjection, TargetSelector

logger = logging.getLogger(__name__)

DEFAULT_SHIFT_PX = 6
MIDDLE_BAR = 1

ContentVariant = str
Candidate = Tuple[LaidOutView, ...]


# --- Selection ---

def _rows(root: LaidOutView, used_rows: Set[str]) -> List[LaidOutView]:
    return [view for view in root.walk() if view.role == "row" and view.uid not in used_rows]


def _select(candidates: List[Candidate], target: TargetSelector, rng: np.random.Generator, kind: str) -> Candidate:
    if not candidates:
        raise InjectionInfeasible(f"No candidate view for a {kind} injection")
    if target == "first":
        return candidates[0]
    if target == "last":
        return candidates[-1]
    if target == "random":
        return candidates[int(rng.integers(len(candidates)))]
    if not 0 <= target < len(candidates):
        raise InjectionInfeasible(f"Target index {target} out of range for {kind} ({len(candidates)} candidates)")
    return candidates[target]


def _neighbours(row: LaidOutView, both_text: bool) -> List[Candidate]:
    """Adjacent widgets (A, B) sharing a line of `row`, filtered by text-ness."""
    pairs = []
    for a, b in zip(row.children, row.children[1:]):
        if a.bounds.y != b.bounds.y or a.bounds.w < 2:
            continue
        texts = a.role == "text" and b.role == "text"
        if texts == both_text:
            pairs.append((row, a, b))
    return pairs


# --- Individual injections ---

def _overlap(row: LaidOutView, a: LaidOutView, b: LaidOutView, magnitude: Optional[int]) -> List[str]:
    """Slides B left so it covers the right edge of A."""
    depth = min(magnitude or DEFAULT_SHIFT_PX, a.bounds.w - 1)
    shift = (b.bounds.x - a.bounds.right) + depth
    b.bounds = b.bounds.translate(-shift, 0)
    logger.debug(f"Shifted '{b.uid}' {shift} px over '{a.uid}' in row '{row.uid}'")
    return [a.uid, b.uid]


def _missing(row: LaidOutView, leaf: LaidOutView) -> List[str]:
    row.children = [child for child in row.children if child.uid != leaf.uid]
    logger.debug(f"Removed '{leaf.uid}' from row '{row.uid}'")
    return [leaf.uid]


def _clipped_children(row: LaidOutView, height: int) -> List[str]:
    bottom = row.bounds.y + height
    return [child.uid for child in row.children if child.bounds.bottom > bottom]


def _crop_row(row: LaidOutView, default_row: LaidOutView, magnitude: Optional[int]) -> List[str]:
    """Pins the row to its default-scale height so grown children are clipped."""
    height = max(1, default_row.bounds.h - (magnitude or 0))
    labels = _clipped_children(row, height)
    row.bounds = row.bounds.model_copy(update={"h": height})
    logger.debug(f"Pinned row '{row.uid}' to {height} px; clipped {labels}")
    return labels


def _freeze_text(view: LaidOutView, default_view: LaidOutView) -> List[str]:
    view.glyph_size = default_view.glyph_size
    logger.debug(f"Froze glyphs of '{view.uid}' at {view.glyph_size} px")
    return [view.uid]


def _truncate_text(view: LaidOutView, magnitude: Optional[int]) -> List[str]:
    length = len(view.view.text)
    dropped = min(max(math.ceil(length / 2), magnitude or 0), length - 1)
    view.glyph_limit = length - dropped
    logger.debug(f"Truncated '{view.uid}' to {view.glyph_limit} of {length} glyphs")
    return [view.uid]


def _drop_icon_bar(view: LaidOutView) -> List[str]:
    view.dropped_bars = [MIDDLE_BAR]
    logger.debug(f"Dropped the middle bar of icon '{view.uid}'")
    return [view.uid]


# --- Dispatch ---

def _content_candidates(rows: List[LaidOutView]) -> Dict[ContentVariant, List[Candidate]]:
    texts = [(row, leaf) for row in rows for leaf in row.children
             if leaf.role == "text" and not leaf.view.ellipsized and len(leaf.view.text or "") > 1]
    icons = [(row, leaf) for row in rows for leaf in row.children if leaf.role == "icon"]
    return {"freeze": texts, "truncate": texts, "icon": icons}


def apply_injection(
    scaled_root: LaidOutView,
    default_root: LaidOutView,
    injection: BugInjection,
    rng: np.random.Generator,
    used_rows: Set[str],
) -> List[str]:
    """
    Applies one bug to `scaled_root` in place.

    Args:
        scaled_root: Laid-out larger-scale page; mutated.
        default_root: Laid-out default page of the same logical tree.
        injection: What to inject and where.
        rng: Case generator, used for "random" targets and variants.
        used_rows: Uids of rows already holding a bug; updated.

    Returns:
        Uids of the views the bug makes buggy.

    Raises:
        InjectionInfeasible: No view satisfies the injection's requirements.
    """
    rows = _rows(scaled_root, used_rows)
    defaults = {view.uid: view for view in default_root.walk()}
    kind = injection.kind

    if kind in (IssueCategory.COMPONENT_OVERLAPPING, IssueCategory.CONTENT_OVERLAPPING):
        both_text = kind == IssueCategory.CONTENT_OVERLAPPING
        candidates = [pair for row in rows for pair in _neighbours(row, both_text)]
        row, a, b = _select(candidates, injection.target, rng, kind.value)
        labels = _overlap(row, a, b, injection.magnitude)
    elif kind == IssueCategory.COMPONENT_MISSING:
        candidates = [(row, leaf) for row in rows for leaf in row.children]
        row, leaf = _select(candidates, injection.target, rng, kind.value)
        labels = _missing(row, leaf)
    elif kind == IssueCategory.COMPONENT_CROPPING:
        candidates = [
            (row,) for row in rows
            if _clipped_children(row, max(1, defaults[row.uid].bounds.h - (injection.magnitude or 0)))
        ]
        (row,) = _select(candidates, injection.target, rng, kind.value)
        labels = _crop_row(row, defaults[row.uid], injection.magnitude)
    else:
        by_variant = _content_candidates(rows)
        variant = injection.variant
        if variant is None:
            feasible = [name for name, found in by_variant.items() if found]
            if not feasible:
                raise InjectionInfeasible("No text or icon view for a ContentCropping injection")
            variant = feasible[int(rng.integers(len(feasible)))]
        row, leaf = _select(by_variant[variant], injection.target, rng, f"{kind.value}/{variant}")
        actions: Dict[ContentVariant, Callable[[], List[str]]] = {
            "freeze": lambda: _freeze_text(leaf, defaults[leaf.uid]),
            "truncate": lambda: _truncate_text(leaf, injection.magnitude),
            "icon": lambda: _drop_icon_bar(leaf),
        }
        labels = actions[variant]()

    used_rows.add(row.uid)
    logger.info(f"Injected {kind.value} into row '{row.uid}': buggy views {labels}")
    return labels
