# scalediff/core/fixtures/__init__.py

"""
Synthetic ground-truth corpora: page layout at a scale setting, rendering
with per-pixel provenance, bug injection and corpus writing.
"""

from ..snapshot.io import write_snapshot
from .generator import (
    QUICK_RETRIES,
    GeneratedCase,
    generate_case,
    generate_corpus,
    quick_corpus_specs,
    write_corpus,
)
from .inject import apply_injection
from .layout import LaidOutView, build_page, layout_page
from .render import RenderResult, render_snapshot, render_with_provenance
from .spec import BugInjection, FixtureSpec, TreeShape, load_fixture_specs

__all__ = [
    "QUICK_RETRIES",
    "BugInjection",
    "FixtureSpec",
    "GeneratedCase",
    "LaidOutView",
    "RenderResult",
    "TreeShape",
    "apply_injection",
    "build_page",
    "generate_case",
    "generate_corpus",
    "layout_page",
    "load_fixture_specs",
    "quick_corpus_specs",
    "render_snapshot",
    "render_with_provenance",
    "write_corpus",
    "write_snapshot",
]
