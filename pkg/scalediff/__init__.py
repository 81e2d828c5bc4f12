# scalediff/__init__.py

"""
scalediff: detects GUI scaling issues by comparing view-tree snapshots of the
same page captured at the default scale and at a larger display/font scale.
"""

from .version import __version__

__all__ = ["__version__"]
