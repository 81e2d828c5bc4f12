# scalediff/core/intraview.py

"""
Intra-view checks on a paired pair of visible leaf views.

Text views: foreground glyph area should grow with the square of the text
scale ratio. Non-text views: the number of foreground components should stay
the same, and when it does not, the two images must still be structurally
similar (SSIM) after being brought to a common size.
"""

import logging
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .errors import MissingTextSize
from .findings import Finding, FindingKind
from .imaging import ConnectedComponent, connected_components, foreground, resize_area, ssim
from .snapshot.models import RgbaImage, ViewNode

logger = logging.getLogger(__name__)


# --- Types ---

class ScaleRatio(BaseModel):
    """Text scale ratio between counterpart views (scaled size / default size)."""
    model_config = ConfigDict(frozen=True)

    gamma: float = Field(gt=0, allow_inf_nan=False)

    @classmethod
    def between(cls, a: ViewNode, b: ViewNode) -> "ScaleRatio":
        if a.text_size is None or b.text_size is None:
            missing = a.uid if a.text_size is None else b.uid
            raise MissingTextSize(f"Text view '{missing}' has no textSize")
        return cls(gamma=b.text_size / a.text_size)

    @property
    def expected_area_ratio(self) -> float:
        return self.gamma * self.gamma


class IntraCheckConfig(BaseModel):
    """Thresholds for the intra-view checks."""
    model_config = ConfigDict(frozen=True)

    area_tolerance: float = Field(0.2, gt=0.0, lt=1.0)
    ssim_threshold: float = Field(0.9, gt=0.0, le=1.0)
    icon_match_slack: int = Field(1, ge=0)


# --- Helpers ---

def _components(img: RgbaImage) -> List[ConnectedComponent]:
    if img.size == 0:
        return []
    return connected_components(foreground(img))


def _same_shape(a: ConnectedComponent, b: ConnectedComponent, slack: int) -> bool:
    return (abs(a.bbox.w - b.bbox.w) <= slack
            and abs(a.bbox.h - b.bbox.h) <= slack
            and abs(a.area - b.area) <= slack)


def _by_area(comps: List[ConnectedComponent]) -> List[ConnectedComponent]:
    return sorted(comps, key=lambda c: (-c.area, c.label))


def eliminate_unchanged(
    comps_a: List[ConnectedComponent],
    comps_b: List[ConnectedComponent],
    slack: int,
) -> Tuple[List[ConnectedComponent], List[ConnectedComponent]]:
    """
    Drops components present unscaled in both images (icons, bullets).

    Components are matched greedily in descending area order; each component
    of `comps_b` is used at most once.
    """
    remaining_b = _by_area(comps_b)
    kept_a: List[ConnectedComponent] = []
    for comp in _by_area(comps_a):
        partner = next((i for i, other in enumerate(remaining_b) if _same_shape(comp, other, slack)), None)
        if partner is None:
            kept_a.append(comp)
        else:
            del remaining_b[partner]
    return kept_a, remaining_b


def _finding(kind: FindingKind, a: ViewNode, b: ViewNode, evidence: Dict[str, Any]) -> Finding:
    mapping_ids = sorted({m for m in (a.mapping_id, b.mapping_id) if m})
    return Finding.create(kind, [a.uid], [b.uid], {"mappingIds": mapping_ids, **evidence})


# --- Checks ---

def check_text_pair(
    a: ViewNode,
    image_a: RgbaImage,
    b: ViewNode,
    image_b: RgbaImage,
    cfg: Optional[IntraCheckConfig] = None,
) -> Optional[Finding]:
    """
    Checks that glyph area scales with gamma squared between two text views.

    Ellipsized views are skipped. When elimination of unchanged components
    leaves nothing on either side, the raw totals are compared instead: text
    that did not scale at all must not vanish into the "unchanged" bucket.

    Raises:
        MissingTextSize: If either view has no textSize.
    """
    cfg = cfg or IntraCheckConfig()
    ratio = ScaleRatio.between(a, b)
    if a.ellipsized or b.ellipsized:
        logger.debug(f"Text pair '{a.uid}'/'{b.uid}' ellipsized; skipped.")
        return None

    comps_a = _components(image_a)
    comps_b = _components(image_b)
    total_a = sum(c.area for c in comps_a)
    total_b = sum(c.area for c in comps_b)

    kept_a, kept_b = eliminate_unchanged(comps_a, comps_b, cfg.icon_match_slack)
    area_a = sum(c.area for c in kept_a)
    area_b = sum(c.area for c in kept_b)
    if area_a == 0 and area_b == 0:
        area_a, area_b = total_a, total_b

    evidence: Dict[str, Any] = {
        "gamma": ratio.gamma,
        "areaDefault": area_a,
        "areaScaled": area_b,
        "expectedRatio": ratio.expected_area_ratio,
    }
    if area_a == 0 and area_b == 0:
        return None
    if area_a == 0 or area_b == 0:
        logger.debug(f"Text pair '{a.uid}'/'{b.uid}': foreground on one side only.")
        return _finding(FindingKind.TEXT_SCALE_ANOMALY, a, b, evidence)

    observed = area_b / area_a
    deviation = abs(observed - ratio.expected_area_ratio) / ratio.expected_area_ratio
    logger.debug(
        f"Text pair '{a.uid}'/'{b.uid}': gamma {ratio.gamma:.3f}, area ratio {observed:.3f}, "
        f"deviation {deviation:.3f}"
    )
    if deviation <= cfg.area_tolerance:
        return None
    evidence.update({"ratio": observed, "deviation": deviation})
    return _finding(FindingKind.TEXT_SCALE_ANOMALY, a, b, evidence)


def check_nontext_pair(
    a: ViewNode,
    image_a: RgbaImage,
    b: ViewNode,
    image_b: RgbaImage,
    cfg: Optional[IntraCheckConfig] = None,
) -> Optional[Finding]:
    """
    Flags non-text views whose component count changed and whose content is
    no longer similar once the larger image is shrunk to the smaller's size.
    """
    cfg = cfg or IntraCheckConfig()
    if image_a.size == 0 or image_b.size == 0:
        return None
    count_a = len(_components(image_a))
    count_b = len(_components(image_b))
    if count_a == count_b:
        return None

    h_a, w_a = image_a.shape[:2]
    h_b, w_b = image_b.shape[:2]
    if w_a * h_a >= w_b * h_b:
        score = ssim(resize_area(image_a, w_b, h_b), image_b)
    else:
        score = ssim(image_a, resize_area(image_b, w_a, h_a))
    logger.debug(f"Non-text pair '{a.uid}'/'{b.uid}': components {count_a} vs {count_b}, SSIM {score:.4f}")
    if score >= cfg.ssim_threshold:
        return None
    return _finding(FindingKind.NON_TEXT_ANOMALY, a, b, {
        "componentsDefault": count_a,
        "componentsScaled": count_b,
        "ssim": score,
    })


def check_pair(
    a: ViewNode,
    image_a: RgbaImage,
    b: ViewNode,
    image_b: RgbaImage,
    cfg: Optional[IntraCheckConfig] = None,
) -> Optional[Finding]:
    """Dispatches a paired leaf to the text or non-text check."""
    if a.is_text and b.is_text:
        return check_text_pair(a, image_a, b, image_b, cfg)
    if not a.is_text and not b.is_text:
        return check_nontext_pair(a, image_a, b, image_b, cfg)
    logger.debug(f"Text present on one side only for '{a.uid}'/'{b.uid}'.")
    return _finding(FindingKind.TEXT_SCALE_ANOMALY, a, b, {"textDefault": a.text, "textScaled": b.text})
