# scalediff/core/fixtures/render.py

"""
Renders a laid-out page into a Snapshot.

Each view's image holds its own content composited with all of its
offspring: children are drawn over the parent in draw order with
source-over compositing and clipped to the parent's bounds. Text is drawn as
pseudo-glyph blocks and icons as bars on a tile, so pixel areas scale
predictably. Rendering also tracks, per pixel, which view owns the final
colour.
"""

import logging
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..errors import GeometryOverflow
from ..imaging import paste_clipped
from ..snapshot.models import Rect, RgbaImage, ScaleSetting, Snapshot, ViewNode
from .layout import MAX_CANVAS_PX, LaidOutView, glyph_boxes

logger = logging.getLogger(__name__)

NO_OWNER = -1


class RenderResult(BaseModel):
    """A rendered snapshot plus per-view ownership maps."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    snapshot: Snapshot
    # uid -> (h, w) int array of indices into `owners` (NO_OWNER where transparent)
    provenance: Dict[str, np.ndarray]
    owners: List[str]

    def owner_map(self, uid: str) -> np.ndarray:
        """Ownership map of `uid`'s image as an object array of uids (None where empty)."""
        lookup = np.array(self.owners + [None], dtype=object)
        return lookup[self.provenance[uid]]


def image_ref(uid: str) -> str:
    return f"images/{uid}.png"


def _draw_own_content(view: LaidOutView) -> RgbaImage:
    """The view's own pixels, before any child is drawn."""
    h, w = view.bounds.h, view.bounds.w
    image = np.zeros((h, w, 4), dtype=np.uint8)
    image[...] = view.view.fill

    if view.role == "text" and view.view.text:
        for box in glyph_boxes(view.view.text, view.glyph_size, view.pad, view.glyph_limit):
            clipped = box.intersect(Rect(x=0, y=0, w=w, h=h))
            image[clipped.slices()] = view.view.ink + (255,)
    elif view.role == "icon":
        for index, (bar, ink) in enumerate(zip(view.view.bars, view.view.bar_inks)):
            if index in view.dropped_bars:
                continue
            x0, y0, x1, y1 = bar
            rows = slice(int(np.floor(y0 * h + 0.5)), int(np.floor(y1 * h + 0.5)))
            cols = slice(int(np.floor(x0 * w + 0.5)), int(np.floor(x1 * w + 0.5)))
            image[rows, cols] = ink + (255,)
    return image


def _render(
    view: LaidOutView,
    images: Dict[str, RgbaImage],
    provenance: Dict[str, np.ndarray],
    index: Dict[str, int],
) -> Tuple[RgbaImage, np.ndarray]:
    image = _draw_own_content(view)
    owners = np.where(image[..., 3] > 0, index[view.uid], NO_OWNER).astype(np.int32)

    ordered = sorted(enumerate(view.children), key=lambda item: (item[1].view.z_order, item[0]))
    for _, child in ordered:
        child_image, child_owners = _render(child, images, provenance, index)
        offset = (child.bounds.x - view.bounds.x, child.bounds.y - view.bounds.y)
        image = paste_clipped(image, child_image, offset)

        # Ownership follows the clipped child wherever it has content.
        region = child.bounds.relative_to(view.bounds).intersect(Rect(x=0, y=0, w=view.bounds.w, h=view.bounds.h))
        if region.is_empty:
            continue
        local = region.translate(-offset[0], -offset[1])
        covered = child_image[local.slices()][..., 3] > 0
        target = owners[region.slices()]
        target[covered] = child_owners[local.slices()][covered]

    images[view.uid] = image
    provenance[view.uid] = owners
    return image, owners


def _to_node(view: LaidOutView) -> ViewNode:
    fixture = view.view
    return ViewNode(
        uid=fixture.uid,
        mapping_id=fixture.mapping_id,
        class_name=fixture.class_name,
        bounds=view.bounds,
        z_order=fixture.z_order,
        text=fixture.text,
        text_size=view.text_size,
        ellipsized=fixture.ellipsized,
        scroll_hint=fixture.scroll_hint,
        image_ref=image_ref(fixture.uid),
        children=[_to_node(child) for child in view.children],
    )


def render_with_provenance(root: LaidOutView, scale: ScaleSetting, screen: Rect) -> RenderResult:
    """
    Renders every view image and the per-pixel owner maps.

    Raises:
        GeometryOverflow: A view is larger than the canvas limit.
    """
    for view in root.walk():
        if view.bounds.w > MAX_CANVAS_PX or view.bounds.h > MAX_CANVAS_PX:
            raise GeometryOverflow(f"View '{view.uid}' ({view.bounds.w}x{view.bounds.h}) exceeds the canvas limit")
    uids = [view.uid for view in root.walk()]
    index = {uid: i for i, uid in enumerate(uids)}
    images: Dict[str, RgbaImage] = {}
    provenance: Dict[str, np.ndarray] = {}
    _render(root, images, provenance, index)

    snapshot = Snapshot(
        scale=scale,
        root=_to_node(root),
        images={image_ref(uid): image for uid, image in images.items()},
        screen=screen,
    )
    logger.debug(f"Rendered {len(images)} view images at {scale.label}")
    return RenderResult(snapshot=snapshot, provenance=provenance, owners=uids)


def render_snapshot(root: LaidOutView, scale: ScaleSetting, screen: Rect) -> Snapshot:
    """Renders a laid-out page into a Snapshot."""
    return render_with_provenance(root, scale, screen).snapshot
