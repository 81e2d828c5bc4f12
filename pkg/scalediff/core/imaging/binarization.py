# scalediff/core/imaging/binarization.py

"""
Grayscale conversion, Otsu thresholding and foreground binarization.

Polarity follows dark-on-light content: pixels at or below the threshold are
foreground (1), brighter pixels are background (0).
"""

import logging
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from ..errors import DegenerateImage
from ..snapshot.models import RgbaImage
from .compositing import BinaryMatrix

logger = logging.getLogger(__name__)

GrayImage = NDArray[np.uint8]


def to_gray(img: RgbaImage) -> GrayImage:
    """
    Luma conversion: round(0.299 r + 0.587 g + 0.114 b), alpha ignored.

    Evaluated in integer thousandths so halves round up exactly.
    """
    rgb = img[..., :3].astype(np.int64)
    weighted = 299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2]
    return ((weighted + 500) // 1000).astype(np.uint8)


def otsu_threshold(img: GrayImage) -> int:
    """
    Threshold maximizing between-class variance over the 256-bin histogram.

    Class 0 is every pixel <= t. Variances are compared as exact fractions, so
    ties (e.g. a two-valued image) resolve to the smallest maximizing t.

    Raises:
        DegenerateImage: The image is empty or all its pixels share one value.
    """
    if img.size == 0:
        raise DegenerateImage("Cannot threshold an empty image")
    hist = np.bincount(img.ravel(), minlength=256).astype(np.int64)
    if np.count_nonzero(hist) < 2:
        raise DegenerateImage(f"All {img.size} pixels have value {int(img.ravel()[0])}")

    total = int(img.size)
    levels = np.arange(256, dtype=np.int64)
    cum_count = np.cumsum(hist)
    cum_sum = np.cumsum(hist * levels)
    grand_sum = int(cum_sum[-1])

    best_t, best_var = -1, Fraction(-1)
    for t in range(256):
        n0 = int(cum_count[t])
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            continue
        # N^2 * w0 * w1 * (mu0 - mu1)^2 == (N*S0 - n0*S)^2 / (n0*n1)
        spread = total * int(cum_sum[t]) - n0 * grand_sum
        between = Fraction(spread * spread, n0 * n1)
        if between > best_var:
            best_t, best_var = t, between
    return best_t


def binarize(img: GrayImage, threshold: int) -> BinaryMatrix:
    """Foreground (True) where gray <= threshold."""
    return img <= threshold


def foreground(img: RgbaImage) -> BinaryMatrix:
    """
    Otsu-binarized foreground of an RGBA view image.

    A uniform image has no second class; it is treated as having no
    foreground rather than raising.
    """
    gray = to_gray(img)
    try:
        threshold = otsu_threshold(gray)
    except DegenerateImage:
        logger.debug(f"Uniform {gray.shape[1]}x{gray.shape[0]} image; empty foreground.")
        return np.zeros(gray.shape, dtype=bool)
    return binarize(gray, threshold)
