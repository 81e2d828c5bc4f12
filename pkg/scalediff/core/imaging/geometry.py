# scalediff/core/imaging/geometry.py

"""
Rectangle measures used by the detectors.
"""

from ..snapshot.models import Rect


def iou(a: Rect, b: Rect) -> float:
    """Intersection over union of two rects; 0.0 when the union is empty."""
    inter = a.intersect(b).area
    union = a.area + b.area - inter
    if union == 0:
        return 0.0
    return inter / union
