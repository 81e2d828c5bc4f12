# tests/test_visualizations.py

"""
Tests for the finding overlay plot.
"""

from PIL import Image

from scalediff.core.findings import IssueCategory
from scalediff.core.pipeline import analyze
from scalediff.core.snapshot.models import Rect
from scalediff.utils.visualizations import finding_boxes, plot_findings
from tests.factories import DARK, LIGHT, block_page, snapshot_of, view


def _overlap_pair():
    def page(b_x):
        return snapshot_of(view("root", (100, 50, 60, 30), [
            view("A", (100, 50, 20, 20), fill=LIGHT),
            view("B", (b_x, 50, 20, 20), fill=DARK),
        ]))
    return page(125), page(118)


def test_finding_boxes_use_root_local_coordinates():
    default, scaled = _overlap_pair()
    report = analyze(default, scaled)
    boxes = finding_boxes(scaled, report)
    assert [(box["uid"], box["rect"]) for box in boxes] == [
        ("A", Rect(x=0, y=0, w=20, h=20)),
        ("B", Rect(x=18, y=0, w=20, h=20)),
    ]
    assert {box["category"] for box in boxes} == {IssueCategory.COMPONENT_OVERLAPPING}


def test_views_absent_from_the_tree_are_skipped():
    default, scaled = block_page(), block_page(with_extra=False)
    report = analyze(default, scaled)
    assert finding_boxes(scaled, report) == []
    assert [box["uid"] for box in finding_boxes(default, report, tree="default")] == ["C"]


def test_plot_findings_writes_png(tmp_path):
    default, scaled = _overlap_pair()
    out = tmp_path / "overlay.png"
    plot_findings(scaled, analyze(default, scaled), out)
    assert out.is_file()
    with Image.open(out) as image:
        assert image.format == "PNG"


def test_plot_clean_report(tmp_path):
    page = block_page()
    out = tmp_path / "clean.png"
    plot_findings(page, analyze(page, page), out, title="no findings")
    assert out.stat().st_size > 0
