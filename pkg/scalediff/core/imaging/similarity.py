# scalediff/core/imaging/similarity.py

"""
Structural similarity (SSIM) between view images and the area/bilinear
resampler used to bring differently sized views to a common size first.
"""

import logging

import numpy as np
from numpy.typing import NDArray
from scipy import ndimage

from ..errors import DimensionMismatch
from ..snapshot.models import RgbaImage

logger = logging.getLogger(__name__)

# --- SSIM parameters (Gaussian window, stabilizers for 8-bit data) ---
_WINDOW_SIZE = 11
_WINDOW_SIGMA = 1.5
_DATA_RANGE = 255.0
_C1 = (0.01 * _DATA_RANGE) ** 2
_C2 = (0.03 * _DATA_RANGE) ** 2


def _gaussian_window(size: int, sigma: float = _WINDOW_SIGMA) -> NDArray[np.float64]:
    """Normalized size x size Gaussian kernel."""
    coords = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    g = np.exp(-(coords ** 2) / (2.0 * sigma ** 2))
    kernel = np.outer(g, g)
    return kernel / kernel.sum()


def _window_size_for(shape) -> int:
    """Largest odd window no bigger than 11 that fits the image."""
    size = min(_WINDOW_SIZE, shape[0], shape[1])
    return size if size % 2 == 1 else size - 1


def _ssim_channel(x: NDArray[np.float64], y: NDArray[np.float64], window: NDArray[np.float64]) -> float:
    """Mean SSIM of one channel over all fully covered window positions."""
    radius = window.shape[0] // 2

    def local_mean(values: NDArray[np.float64]) -> NDArray[np.float64]:
        filtered = ndimage.correlate(values, window, mode="reflect")
        if radius == 0:
            return filtered
        return filtered[radius:-radius, radius:-radius]

    mu_x = local_mean(x)
    mu_y = local_mean(y)
    sigma_xx = local_mean(x * x) - mu_x * mu_x
    sigma_yy = local_mean(y * y) - mu_y * mu_y
    sigma_xy = local_mean(x * y) - mu_x * mu_y

    numerator = (2.0 * mu_x * mu_y + _C1) * (2.0 * sigma_xy + _C2)
    denominator = (mu_x * mu_x + mu_y * mu_y + _C1) * (sigma_xx + sigma_yy + _C2)
    return float(np.mean(numerator / denominator))


def ssim(a: RgbaImage, b: RgbaImage) -> float:
    """
    SSIM of two equally sized RGBA images, averaged over the R, G and B channels.

    When both images have all-zero RGB channels the score is computed on the
    alpha channel instead (content is then carried by transparency alone).

    Raises:
        DimensionMismatch: If the images differ in size.
    """
    if a.shape[:2] != b.shape[:2]:
        raise DimensionMismatch(f"SSIM needs equal sizes, got {a.shape[:2]} and {b.shape[:2]}")
    if a.shape[0] == 0 or a.shape[1] == 0:
        raise DimensionMismatch("SSIM of an empty image is undefined")

    window = _gaussian_window(_window_size_for(a.shape))
    x = a.astype(np.float64)
    y = b.astype(np.float64)

    if not x[..., :3].any() and not y[..., :3].any():
        logger.debug("Both images have zero RGB; comparing alpha channels.")
        return _ssim_channel(x[..., 3], y[..., 3], window)

    scores = [_ssim_channel(x[..., c], y[..., c], window) for c in range(3)]
    return float(np.mean(scores))


# --- Resampling ---

def _axis_weights(size_in: int, size_out: int) -> NDArray[np.float64]:
    """
    (size_out, size_in) resampling matrix for one axis.

    Shrinking averages the covered input cells weighted by overlap (box
    filter); growing interpolates linearly between pixel centres.
    """
    if size_out <= size_in:
        scale = size_in / size_out
        starts = (np.arange(size_out, dtype=np.float64) * scale)[:, None]
        ends = starts + scale
        cells = np.arange(size_in, dtype=np.float64)[None, :]
        overlap = np.minimum(ends, cells + 1.0) - np.maximum(starts, cells)
        return np.clip(overlap, 0.0, None) / scale

    centres = (np.arange(size_out, dtype=np.float64) + 0.5) * size_in / size_out - 0.5
    centres = np.clip(centres, 0.0, size_in - 1)
    lower = np.floor(centres).astype(int)
    upper = np.minimum(lower + 1, size_in - 1)
    frac = centres - lower
    weights = np.zeros((size_out, size_in), dtype=np.float64)
    rows = np.arange(size_out)
    np.add.at(weights, (rows, lower), 1.0 - frac)
    np.add.at(weights, (rows, upper), frac)
    return weights


def resize_area(img: RgbaImage, w: int, h: int) -> RgbaImage:
    """
    Resamples every channel independently to w x h.

    Deterministic; results are rounded half-up and clamped to [0, 255].
    """
    if w < 1 or h < 1:
        raise ValueError(f"Target size must be at least 1x1, got {w}x{h}")
    in_h, in_w = img.shape[:2]
    if (in_w, in_h) == (w, h):
        return img.copy()

    rows = _axis_weights(in_h, h)
    cols = _axis_weights(in_w, w)
    pixels = img.astype(np.float64)
    vertical = np.tensordot(rows, pixels, axes=(1, 0))                  # (h, in_w, c)
    resized = np.tensordot(cols, vertical, axes=(1, 1)).transpose(1, 0, 2)  # (h, w, c)
    return np.clip(np.floor(resized + 0.5), 0, 255).astype(np.uint8)
