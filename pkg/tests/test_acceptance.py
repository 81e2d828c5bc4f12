# tests/test_acceptance.py

"""
Corpus-level accuracy and soundness checks on generated pages. These build
hundreds of snapshots and are marked slow (`pytest -m "not slow"` skips them).
"""

import itertools
import time

import pytest

from scalediff.core.evaluation import evaluate_corpus
from scalediff.core.fixtures import (
    QUICK_RETRIES,
    FixtureSpec,
    TreeShape,
    generate_case,
    generate_corpus,
    quick_corpus_specs,
)
from scalediff.core.fixtures.layout import TEXT_SP, WORDS
from scalediff.core.fixtures.spec import DEFAULT_LARGER_SCALE
from scalediff.core.intraview import check_text_pair
from scalediff.core.pipeline import analyze
from scalediff.core.snapshot.models import DEFAULT_SCALE, ScaleSetting
from tests.factories import snapshot_of, text

pytestmark = pytest.mark.slow

SHAPE = TreeShape(rows=6, fan_out=3, text_ratio=0.6, list_items=3)


def test_mixed_corpus_accuracy():
    cases = generate_corpus(quick_corpus_specs(cases=60, buggy=30, seed=0), retries=QUICK_RETRIES, workers=4)
    metrics = evaluate_corpus([(c.name, c.default, c.scaled, c.label) for c in cases], workers=4)
    assert metrics.page["Bug"].precision >= 0.95
    assert metrics.page["Bug"].recall >= 0.95
    assert metrics.view["Bug"].precision >= 0.85
    assert metrics.view["Bug"].recall >= 0.90


def test_identical_captures_are_always_clean():
    cases = generate_corpus(FixtureSpec(seed=100, cases=100, tree_shape=SHAPE), workers=4)
    flagged = [c.name for c in cases if analyze(c.scaled, c.scaled).is_buggy]
    assert flagged == []


LD_WIDE = ScaleSetting(label="LD", display_scale=1.5)


@pytest.mark.parametrize("drawer", [False, True])
@pytest.mark.parametrize("scaled, seed", [(DEFAULT_LARGER_SCALE, 200), (LD_WIDE, 300)])
def test_faithful_scaling_rarely_flags(scaled, seed, drawer):
    shape = SHAPE.model_copy(update={"drawer": drawer})
    spec = FixtureSpec(seed=seed, cases=25, tree_shape=shape, scale_pair=(DEFAULT_SCALE, scaled))
    cases = generate_corpus(spec, workers=4)
    flagged = [c.name for c in cases if analyze(c.default, c.scaled).is_buggy]
    assert len(flagged) <= 1, flagged


def test_hundred_view_pair_analyzes_within_budget():
    shape = TreeShape(rows=30, fan_out=3, text_ratio=0.6, list_items=8)
    case = generate_case(FixtureSpec(seed=400, tree_shape=shape), 0)
    assert len(case.scaled.nodes) >= 100
    started = time.perf_counter()
    analyze(case.default, case.scaled)
    elapsed = time.perf_counter() - started
    assert elapsed <= 70.0, f"{len(case.scaled.nodes)} views took {elapsed:.1f}s"


GAMMA_CASES = [
    (gamma, f"{WORDS[i % len(WORDS)]} {10 + i}", TEXT_SP[i % len(TEXT_SP)])
    for i, gamma in enumerate(itertools.islice(itertools.cycle([1.25, 1.5, 2.0]), 30))
]


@pytest.mark.parametrize("gamma, content, size", GAMMA_CASES)
def test_text_area_follows_gamma_squared(gamma, content, size):
    a = snapshot_of(text("t", 0, 0, content, size))
    faithful = snapshot_of(text("t", 0, 0, content, size * gamma))
    frozen = snapshot_of(text("t", 0, 0, content, size * gamma, glyph_size=size))

    def check(b):
        return check_text_pair(a.root, a.image_of(a.root), b.root, b.image_of(b.root))

    assert check(faithful) is None
    assert check(frozen) is not None
