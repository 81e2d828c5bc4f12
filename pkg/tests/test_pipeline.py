# tests/test_pipeline.py

"""
End-to-end tests of `analyze` and `scan_page` on hand-made and generated pages.
"""

import pytest

from scalediff.config.models import DetectionConfig
from scalediff.core.errors import MissingFile, MissingTextSize
from scalediff.core.findings import IssueCategory
from scalediff.core.fixtures import QUICK_RETRIES, BugInjection, FixtureSpec, TreeShape, generate_case
from scalediff.core.pipeline import analyze, scan_page
from scalediff.core.snapshot.io import write_snapshot
from scalediff.core.snapshot.models import ScaleSetting
from tests.factories import block_page

SHAPE = TreeShape(rows=6, fan_out=3, text_ratio=0.6, list_items=3)
LD = ScaleSetting(label="LD", display_scale=1.25)
LL = ScaleSetting(label="LL", display_scale=1.25, font_scale=1.3)


def _case(*injections: BugInjection, seed: int = 0, drawer: bool = False):
    shape = SHAPE.model_copy(update={"drawer": drawer})
    return generate_case(FixtureSpec(seed=seed, tree_shape=shape, injections=list(injections)), 0,
                         retries=QUICK_RETRIES)


# --- analyze ---

@pytest.mark.parametrize("seed", [0, 1])
def test_identical_snapshots_are_clean(seed):
    case = _case(seed=seed)
    report = analyze(case.scaled, case.scaled)
    assert report.verdict == "Clean"
    assert report.findings == []
    assert report.diagnostics == []


@pytest.mark.parametrize("drawer", [False, True])
def test_faithful_scaling_is_clean(drawer):
    case = _case(seed=4, drawer=drawer)
    report = analyze(case.default, case.scaled)
    assert report.verdict == "Clean", [f.kind for f in report.findings]
    assert report.scale == "LL"


@pytest.mark.parametrize("kind", list(IssueCategory))
def test_injected_bug_is_found(kind):
    case = _case(BugInjection(kind=kind, target="first"), seed=2)
    report = analyze(case.default, case.scaled)
    assert report.is_buggy
    assert set(case.label.buggy_views) & set(report.buggy_uids())
    assert report.stats[kind.value] >= 1


def test_missing_view_is_reported_on_hand_made_pages():
    report = analyze(block_page(), block_page(with_extra=False, scale=LL))
    assert report.verdict == "Buggy"
    assert report.buggy_uids() == ["C"]
    assert report.stats["ComponentMissing"] == 1
    assert set(report.timings) == {"pairing", "inter_view", "intra_view", "total"}


def test_analysis_is_deterministic():
    case = _case(BugInjection(kind=IssueCategory.COMPONENT_OVERLAPPING), seed=6)
    first = analyze(case.default, case.scaled)
    second = analyze(case.default, case.scaled)
    threaded = analyze(case.default, case.scaled, DetectionConfig(workers=2))
    assert first.canonical_hash() == second.canonical_hash() == threaded.canonical_hash()


def test_kernel_failure_is_recorded_and_analysis_continues(mocker):
    mocker.patch("scalediff.core.pipeline.check_pair", side_effect=MissingTextSize("no size"))
    report = analyze(block_page(), block_page(with_extra=False, scale=LL))
    assert report.stats["ComponentMissing"] == 1
    assert {d.phase for d in report.diagnostics} == {"intra-view"}
    assert {d.uid for d in report.diagnostics} == {"A"}


# --- scan_page ---

def test_scan_page_compares_each_larger_setting(tmp_path):
    write_snapshot(block_page(), tmp_path / "DD")
    write_snapshot(block_page(scale=LD), tmp_path / "LD")
    write_snapshot(block_page(with_extra=False, scale=LL), tmp_path / "LL")
    scan = scan_page(tmp_path)
    assert list(scan.reports) == ["LD", "LL"]
    assert scan.reports["LD"].verdict == "Clean"
    assert scan.reports["LL"].verdict == "Buggy"
    assert scan.is_buggy


def test_scan_page_with_single_setting(tmp_path):
    write_snapshot(block_page(), tmp_path / "DD")
    write_snapshot(block_page(scale=LD), tmp_path / "LD")
    scan = scan_page(tmp_path)
    assert list(scan.reports) == ["LD"]
    assert scan.verdict == "Clean"


def test_scan_page_needs_default_and_larger_setting(tmp_path):
    with pytest.raises(MissingFile):
        scan_page(tmp_path)
    write_snapshot(block_page(), tmp_path / "DD")
    with pytest.raises(MissingFile, match="LD or LL"):
        scan_page(tmp_path)
