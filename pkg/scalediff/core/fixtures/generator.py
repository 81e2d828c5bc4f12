# scalediff/core/fixtures/generator.py

"""
Synthetic corpus generation: builds a logical page per case, lays it out at
both settings of the fixture's scale pair, injects the requested bugs into the
larger-scale layout and renders both snapshots.

The same FixtureSpec always yields the same corpus: every random choice of a
case comes from a generator seeded with (seed, case index).
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Sequence, Set, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..corpus import DEFAULT_DIRNAME, LABELS_FILENAME, SCALED_DIRNAME
from ..errors import InjectionInfeasible
from ..evaluation import CaseLabel, CorpusLabels
from ..findings import IssueCategory
from ..snapshot.io import write_snapshot
from ..snapshot.models import Snapshot
from .inject import apply_injection
from .layout import build_page, layout_page
from .render import render_snapshot
from .spec import BugInjection, FixtureSpec, TreeShape

logger = logging.getLogger(__name__)

QUICK_CATEGORIES = (
    IssueCategory.COMPONENT_OVERLAPPING,
    IssueCategory.CONTENT_OVERLAPPING,
    IssueCategory.COMPONENT_CROPPING,
    IssueCategory.CONTENT_CROPPING,
    IssueCategory.COMPONENT_MISSING,
)
QUICK_RETRIES = 25


class GeneratedCase(BaseModel):
    """One generated snapshot pair and its ground truth."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    default: Snapshot
    scaled: Snapshot
    label: CaseLabel


# --- Single case ---

def generate_case(spec: FixtureSpec, index: int, name: str = "", retries: int = 0) -> GeneratedCase:
    """
    Generates case `index` of `spec`.

    When an injection finds no suitable view, the page is rebuilt from a
    generator keyed (seed, index, attempt) up to `retries` more times.

    Raises:
        InjectionInfeasible: Every attempt left some injection without a target.
        GeometryOverflow: The page does not fit at one of the scale settings.
    """
    default_scale, scaled_scale = spec.scale_pair
    attempt = 0
    while True:
        key = [spec.seed, index] if attempt == 0 else [spec.seed, index, attempt]
        rng = np.random.default_rng(key)
        page = build_page(spec.tree_shape, rng)
        default_root = layout_page(page, default_scale, spec.screen)
        scaled_root = layout_page(page, scaled_scale, spec.screen)

        buggy: Set[str] = set()
        used_rows: Set[str] = set()
        try:
            for injection in spec.injections:
                buggy.update(apply_injection(scaled_root, default_root, injection, rng, used_rows))
        except InjectionInfeasible as e:
            if attempt >= retries:
                raise
            logger.debug(f"Case {index} attempt {attempt}: {e}; rebuilding page")
            attempt += 1
            continue

        label = CaseLabel(
            verdict="Buggy" if buggy else "Clean",
            buggy_views=sorted(buggy),
            categories=[injection.kind.value for injection in spec.injections],
        )
        return GeneratedCase(
            name=name or f"case-{index}",
            default=render_snapshot(default_root, default_scale, spec.screen),
            scaled=render_snapshot(scaled_root, scaled_scale, spec.screen),
            label=label,
        )


# --- Corpora ---

def generate_corpus(
    specs: Union[FixtureSpec, Sequence[FixtureSpec]],
    retries: int = 0,
    workers: int = 1,
) -> List[GeneratedCase]:
    """
    Generates every case of one or more specs, named case-0, case-1, ...
    in spec order.
    """
    spec_list = [specs] if isinstance(specs, FixtureSpec) else list(specs)
    jobs = []
    for spec in spec_list:
        for index in range(spec.cases):
            jobs.append((spec, index, f"case-{len(jobs)}"))

    def run(job) -> GeneratedCase:
        spec, index, name = job
        return generate_case(spec, index, name, retries)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cases = list(pool.map(run, jobs))
    else:
        cases = [run(job) for job in jobs]
    buggy = sum(1 for case in cases if case.label.verdict == "Buggy")
    logger.info(f"Generated {len(cases)} case(s): {buggy} buggy, {len(cases) - buggy} clean")
    return cases


def quick_corpus_specs(cases: int = 60, buggy: int = 30, seed: int = 0) -> List[FixtureSpec]:
    """
    Specs for a mixed corpus: `cases - buggy` clean pages, then `buggy` pages
    with one to three bugs each, rotating through all five categories.
    """
    if not 0 <= buggy <= cases:
        raise ValueError(f"buggy must be within [0, {cases}], got {buggy}")
    shape = TreeShape(rows=6, fan_out=3, text_ratio=0.6, list_items=3)
    specs = []
    if cases - buggy:
        specs.append(FixtureSpec(seed=seed, cases=cases - buggy, tree_shape=shape))
    for i in range(buggy):
        kinds = [QUICK_CATEGORIES[(i + j) % len(QUICK_CATEGORIES)] for j in range(1 + i % 3)]
        specs.append(FixtureSpec(
            seed=seed + 1 + i,
            cases=1,
            tree_shape=shape.model_copy(update={"drawer": i % 4 == 0}),
            injections=[BugInjection(kind=kind) for kind in kinds],
        ))
    return specs


def write_corpus(cases: Sequence[GeneratedCase], out_dir: Union[str, Path]) -> Path:
    """
    Writes `<out>/case-<n>/default/`, `<out>/case-<n>/scaled/` and
    `<out>/labels.json`.
    """
    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    for case in cases:
        write_snapshot(case.default, out_path / case.name / DEFAULT_DIRNAME)
        write_snapshot(case.scaled, out_path / case.name / SCALED_DIRNAME)

    labels = CorpusLabels(cases={case.name: case.label for case in cases})
    with open(out_path / LABELS_FILENAME, "w", encoding="utf-8") as f:
        json.dump(labels.model_dump(by_alias=True), f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info(f"Wrote {len(cases)} case(s) to {out_path}")
    return out_path
