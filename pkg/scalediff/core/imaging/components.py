# scalediff/core/imaging/components.py

"""
Connected-component labeling of binary matrices (8-connectivity).
"""

import logging
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import ndimage

from ..snapshot.models import Rect
from .compositing import BinaryMatrix

logger = logging.getLogger(__name__)

# 8-connectivity: diagonal neighbours join a component.
_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


class ConnectedComponent(BaseModel):
    """A maximal 8-connected set of foreground cells."""
    model_config = ConfigDict(frozen=True)

    label: int = Field(ge=1)
    bbox: Rect
    area: int = Field(ge=1)


def connected_components(m: BinaryMatrix) -> List[ConnectedComponent]:
    """
    Labels the 1-cells of `m` and reports each component's tight bbox and area.

    Components are ordered by their first pixel in a row-major scan and
    labelled densely from 1 in that order.
    """
    mask = np.asarray(m, dtype=bool)
    if not mask.any():
        return []
    labeled, count = ndimage.label(mask, structure=_EIGHT_CONNECTED)

    # Renumber by first occurrence in raster order
    values, first_index = np.unique(labeled.ravel(), return_index=True)
    nonzero = values > 0
    raster_order = values[nonzero][np.argsort(first_index[nonzero], kind="stable")]

    areas = np.bincount(labeled.ravel(), minlength=count + 1)
    boxes = ndimage.find_objects(labeled)

    components: List[ConnectedComponent] = []
    for new_label, old_label in enumerate(raster_order, start=1):
        rows, cols = boxes[old_label - 1]
        components.append(ConnectedComponent(
            label=new_label,
            bbox=Rect(x=cols.start, y=rows.start, w=cols.stop - cols.start, h=rows.stop - rows.start),
            area=int(areas[old_label]),
        ))
    logger.debug(f"Found {len(components)} connected components in {mask.shape[1]}x{mask.shape[0]} matrix.")
    return components
