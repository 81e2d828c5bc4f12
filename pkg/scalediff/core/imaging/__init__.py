# scalediff/core/imaging/__init__.py

"""
Pure image and matrix kernels: compositing, grayscale, Otsu binarization,
connected components, template matching, SSIM, resampling, IoU and
visible-matrix extraction. All functions are side-effect free.
"""

from .binarization import GrayImage, binarize, foreground, otsu_threshold, to_gray
from .compositing import BinaryMatrix, composite_src_over, paste_clipped, visible_matrix
from .components import ConnectedComponent, connected_components
from .geometry import iou
from .matching import MatchResult, template_match
from .similarity import resize_area, ssim

__all__ = [
    "BinaryMatrix",
    "ConnectedComponent",
    "GrayImage",
    "MatchResult",
    "binarize",
    "composite_src_over",
    "connected_components",
    "foreground",
    "iou",
    "otsu_threshold",
    "paste_clipped",
    "resize_area",
    "ssim",
    "template_match",
    "to_gray",
    "visible_matrix",
]
