# tests/test_interview.py

"""
Tests for per-tree visibility, overlap and crop detection, and for the
cross-tree consistency comparison.
"""

import pytest

from scalediff.core.errors import TemplateTooLarge
from scalediff.core.findings import FindingKind, IssueCategory
from scalediff.core.interview import (
    ExemptionConfig,
    analyze_tree,
    compare_inter,
    detect_overlaps,
    detect_visibility,
)
from scalediff.core.pairing import pair_views
from tests.factories import DARK, GRAY, LIGHT, icon, snapshot_of, view

DRAWER_CLASS = "androidx.drawerlayout.widget.DrawerLayout"


def _two_blocks(b_x: int, b_class: str = "android.widget.Button", a_z: int = 0):
    """Root with a light block A at the origin and a dark block B at x=b_x."""
    return snapshot_of(view("root", (0, 0, 60, 30), [
        view("A", (0, 0, 20, 20), fill=LIGHT, z_order=a_z),
        view("B", (b_x, 0, 20, 20), fill=DARK, class_name=b_class),
    ]))


def _framed(child_bounds, parent_class: str = "android.widget.Button", scroll_hint=None):
    return snapshot_of(view("P", (0, 0, 40, 40), [view("C", child_bounds, fill=DARK)],
                            class_name=parent_class, scroll_hint=scroll_hint))


def _covered_icon(covered: bool):
    children = [icon("glyph", (5, 5, 20, 20))]
    if covered:
        children.append(view("cover", (2, 2, 36, 36), fill=DARK, z_order=1))
    return snapshot_of(view("root", (0, 0, 40, 40), children, fill=GRAY))


# --- Visibility ---

def test_exposed_icon_is_visible():
    snap = _covered_icon(covered=False)
    assert detect_visibility(snap) == {"root", "glyph"}


def test_icon_under_opaque_sibling_is_invisible():
    snap = _covered_icon(covered=True)
    assert detect_visibility(snap) == {"root", "cover"}


def test_children_of_invisible_parent_are_invisible():
    panel = view("panel", (5, 5, 24, 24), [icon("inner", (7, 7, 20, 20))], fill=LIGHT)
    cover = view("cover", (2, 2, 36, 36), fill=DARK, z_order=1)
    snap = snapshot_of(view("root", (0, 0, 40, 40), [panel, cover]))
    visible = detect_visibility(snap)
    assert "panel" not in visible
    assert "inner" not in visible


def test_child_outside_parent_is_invisible():
    snap = snapshot_of(view("root", (0, 0, 40, 40), [icon("away", (50, 50, 20, 20))]))
    assert detect_visibility(snap) == {"root"}


def test_visibility_kernel_failure_becomes_diagnostic(mocker):
    mocker.patch("scalediff.core.interview.template_match", side_effect=TemplateTooLarge("boom"))
    state = analyze_tree(_covered_icon(covered=False))
    assert "glyph" in state.visible
    assert [(d.phase, d.uid) for d in state.diagnostics] == [("visibility", "glyph")]


# --- Overlap ---

def test_overlap_erodes_earlier_drawn_view():
    state = analyze_tree(_two_blocks(b_x=18))
    assert state.overlaps == {frozenset({"A", "B"}): 40}
    assert state.matrix_area("A") == 360
    assert state.matrix_area("B") == 400


def test_z_order_decides_which_view_loses_pixels():
    state = analyze_tree(_two_blocks(b_x=18, a_z=1))
    assert state.matrix_area("A") == 400
    assert state.matrix_area("B") == 360


def test_disjoint_siblings_do_not_overlap():
    assert analyze_tree(_two_blocks(b_x=25)).overlaps == {}


def test_intersecting_bounds_with_disjoint_pixels_do_not_overlap():
    clear = (0, 0, 0, 0)
    a = view("A", (0, 0, 20, 20), [view("a_dot", (0, 0, 8, 8), fill=DARK)], fill=clear)
    b = view("B", (14, 0, 20, 20), [view("b_dot", (26, 12, 8, 8), fill=DARK)], fill=clear)
    snap = snapshot_of(view("root", (0, 0, 60, 30), [a, b]))
    assert not snap.nodes["A"].bounds.intersect(snap.nodes["B"].bounds).is_empty

    state = detect_overlaps(snap, visible=set(snap.nodes))
    assert state.overlaps == {}
    assert state.matrix_area("A") == 64
    assert state.matrix_area("B") == 64


def test_collapsible_views_are_exempt_from_overlap():
    state = analyze_tree(_two_blocks(b_x=18, b_class=DRAWER_CLASS))
    assert state.overlaps == {}
    assert state.matrix_area("A") == 400


# --- Crop ---

def test_child_past_parent_edge_is_cropped():
    state = analyze_tree(_framed((30, 30, 20, 20)))
    assert state.crops == {"C": 300}
    assert state.matrix_area("C") == 100


def test_contained_child_is_not_cropped():
    assert analyze_tree(_framed((10, 10, 20, 20))).crops == {}


def test_pixels_lost_to_overlap_are_not_cropped_again():
    snap = snapshot_of(view("P", (0, 0, 40, 40), [
        view("A", (30, 0, 20, 20), fill=DARK),
        view("B", (35, 0, 15, 20), fill=LIGHT),
    ]))
    state = analyze_tree(snap)
    assert state.overlaps == {frozenset({"A", "B"}): 300}
    assert state.crops == {"B": 200}
    assert state.matrix_area("A") == 100


def test_scrollable_parent_exempts_children():
    state = analyze_tree(_framed((30, 30, 20, 20), parent_class="android.widget.ScrollView"))
    assert state.crops == {}


def test_scroll_hint_overrides_class_name():
    not_scrolling = analyze_tree(_framed((30, 30, 20, 20), parent_class="android.widget.ScrollView",
                                         scroll_hint=False))
    assert not_scrolling.crops == {"C": 300}
    scrolling = analyze_tree(_framed((30, 30, 20, 20), scroll_hint=True))
    assert scrolling.crops == {}


def test_custom_exemption_classes():
    exemptions = ExemptionConfig(scrollable_classes=frozenset({"Button"}))
    assert analyze_tree(_framed((30, 30, 20, 20)), exemptions).crops == {}


def test_exemption_config_requires_classes():
    with pytest.raises(ValueError):
        ExemptionConfig(scrollable_classes=frozenset())


# --- Cross-tree comparison ---

def _compare(a, b):
    return compare_inter(analyze_tree(a), analyze_tree(b), pair_views(a, b))


def test_equal_status_is_silent():
    snap = _two_blocks(b_x=18)
    assert _compare(snap, snap) == []
    framed = _framed((30, 30, 20, 20))
    assert _compare(framed, framed) == []


def test_new_overlap_is_reported():
    findings = _compare(_two_blocks(b_x=25), _two_blocks(b_x=18))
    assert len(findings) == 1
    finding = findings[0]
    assert finding.kind == FindingKind.OVERLAP_INCONSISTENCY
    assert finding.category == IssueCategory.COMPONENT_OVERLAPPING
    assert finding.views == {"default": ["A", "B"], "scaled": ["A", "B"]}
    assert finding.evidence["overlapArea"] == 40
    assert finding.evidence["tree"] == "scaled"
    assert finding.evidence["mappingIds"] == ["A", "B"]


def test_new_crop_is_reported():
    findings = _compare(_framed((10, 10, 20, 20)), _framed((30, 30, 20, 20)))
    assert [f.kind for f in findings] == [FindingKind.CROP_INCONSISTENCY]
    assert findings[0].category == IssueCategory.COMPONENT_CROPPING
    assert findings[0].evidence["croppedDefault"] == 0
    assert findings[0].evidence["croppedScaled"] == 300


def test_lost_visibility_is_reported():
    findings = _compare(_covered_icon(covered=False), _covered_icon(covered=True))
    assert [f.kind for f in findings] == [FindingKind.VISIBILITY_INCONSISTENCY]
    assert findings[0].category == IssueCategory.COMPONENT_MISSING
    assert findings[0].evidence["visibleDefault"] is True
    assert findings[0].evidence["visibleScaled"] is False


def test_visible_view_without_counterpart_is_missing():
    a = snapshot_of(view("root", (0, 0, 60, 30), [
        view("A", (0, 0, 20, 20), fill=LIGHT),
        view("C", (30, 0, 20, 20), fill=DARK),
    ]))
    b = snapshot_of(view("root", (0, 0, 60, 30), [view("A", (0, 0, 20, 20), fill=LIGHT)]))
    findings = _compare(a, b)
    assert [f.kind for f in findings] == [FindingKind.MISSING_COUNTERPART]
    assert findings[0].views == {"default": ["C"], "scaled": []}


def test_extra_scaled_view_is_not_missing():
    a = snapshot_of(view("root", (0, 0, 60, 30), [view("A", (0, 0, 20, 20), fill=LIGHT)]))
    b = snapshot_of(view("root", (0, 0, 60, 30), [
        view("A", (0, 0, 20, 20), fill=LIGHT),
        view("C", (30, 0, 20, 20), fill=DARK),
    ]))
    assert _compare(a, b) == []
