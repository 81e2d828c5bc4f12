# scalediff/core/imaging/compositing.py

"""
Source-over alpha compositing and visible-matrix extraction.

Images are stored with straight (non-premultiplied) alpha. Compositing
premultiplies, applies Res = Src + (255 - Src_a)/255 * Dest per channel, and
un-premultiplies the result for storage.
"""

import logging
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from ..errors import OutOfBounds
from ..snapshot.models import RgbaImage

logger = logging.getLogger(__name__)

# Binary {0,1} matrix; stored as bool so AND/NOT are elementwise numpy ops.
BinaryMatrix = NDArray[np.bool_]


def composite_src_over(dest: RgbaImage, src: RgbaImage, offset: Tuple[int, int]) -> RgbaImage:
    """
    Draws `src` over `dest` with its top-left corner at `offset` = (x, y).

    Args:
        dest: Destination RGBA image (h, w, 4), straight alpha.
        src: Source RGBA image, straight alpha. Must fit inside `dest` at `offset`;
             callers slice first.
        offset: (x, y) of the source's top-left corner in `dest` coordinates.

    Returns:
        A new image; only the covered region differs from `dest`. Channels are
        rounded to the nearest integer and clamped to [0, 255].

    Raises:
        OutOfBounds: If the source region exceeds the destination.
    """
    x, y = offset
    sh, sw = src.shape[:2]
    dh, dw = dest.shape[:2]
    if x < 0 or y < 0 or x + sw > dw or y + sh > dh:
        raise OutOfBounds(f"Source {sw}x{sh} at ({x},{y}) exceeds destination {dw}x{dh}")

    result = dest.copy()
    if sw == 0 or sh == 0:
        return result

    region = dest[y:y + sh, x:x + sw].astype(np.float64)
    source = src.astype(np.float64)

    src_a = source[..., 3:4]
    dst_a = region[..., 3:4]
    # Premultiply into [0, 255] space
    src_p = source[..., :3] * src_a / 255.0
    dst_p = region[..., :3] * dst_a / 255.0

    keep = (255.0 - src_a) / 255.0
    out_p = src_p + keep * dst_p
    out_a = src_a + keep * dst_a

    with np.errstate(divide="ignore", invalid="ignore"):
        out_c = np.where(out_a > 0, out_p * 255.0 / out_a, 0.0)

    blended = np.concatenate([out_c, out_a], axis=-1)
    result[y:y + sh, x:x + sw] = np.clip(np.floor(blended + 0.5), 0, 255).astype(np.uint8)
    return result


def visible_matrix(img: RgbaImage) -> BinaryMatrix:
    """Marks every pixel whose alpha is non-zero (the view has content there)."""
    return img[..., 3] > 0


def paste_clipped(dest: RgbaImage, src: RgbaImage, offset: Tuple[int, int]) -> RgbaImage:
    """
    Source-over draw that first clips `src` to the destination canvas.

    Offsets may be negative or push the source past the far edges; the part
    outside is discarded, as a parent clips its children.
    """
    x, y = offset
    sh, sw = src.shape[:2]
    dh, dw = dest.shape[:2]
    x0, y0 = max(x, 0), max(y, 0)
    x1, y1 = min(x + sw, dw), min(y + sh, dh)
    if x1 <= x0 or y1 <= y0:
        return dest
    clipped = src[y0 - y:y1 - y, x0 - x:x1 - x]
    return composite_src_over(dest, clipped, (x0, y0))
