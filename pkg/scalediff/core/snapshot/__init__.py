# scalediff/core/snapshot/__init__.py

"""
View-tree snapshot model and its on-disk format (tree.json + images/*.png).
"""

from .models import DEFAULT_SCALE, Rect, RgbaImage, ScaleSetting, Snapshot, ViewNode
from .tree import draw_order, preorder
from .io import load_snapshot, write_snapshot

__all__ = [
    "DEFAULT_SCALE",
    "Rect",
    "RgbaImage",
    "ScaleSetting",
    "Snapshot",
    "ViewNode",
    "draw_order",
    "preorder",
    "load_snapshot",
    "write_snapshot",
]
