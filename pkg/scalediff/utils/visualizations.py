# scalediff/utils/visualizations.py

"""
Matplotlib overlay of findings on a page capture: the root image of the
snapshot with a labeled box around every view a finding names.
"""

import logging
from pathlib import Path
from typing import Dict, List, Union

import matplotlib

matplotlib.use("Agg")  # file output only

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from scalediff.core.findings import IssueCategory, Report
from scalediff.core.snapshot.models import Rect, Snapshot

logger = logging.getLogger(__name__)

CATEGORY_COLORS: Dict[IssueCategory, str] = {
    IssueCategory.COMPONENT_OVERLAPPING: "tab:red",
    IssueCategory.CONTENT_OVERLAPPING: "tab:orange",
    IssueCategory.COMPONENT_CROPPING: "tab:purple",
    IssueCategory.CONTENT_CROPPING: "tab:blue",
    IssueCategory.COMPONENT_MISSING: "tab:green",
}


def finding_boxes(snapshot: Snapshot, report: Report, tree: str = "scaled") -> List[Dict]:
    """
    Boxes to draw: one per (finding, view) whose uid exists in `snapshot`,
    in root-image coordinates.
    """
    boxes = []
    for index, finding in enumerate(report.findings):
        for uid in finding.views.get(tree, []):
            node = snapshot.nodes.get(uid)
            if node is None:
                continue
            local: Rect = node.bounds.relative_to(snapshot.root.bounds)
            boxes.append({"finding": index, "uid": uid, "category": finding.category, "rect": local})
    return boxes


def plot_findings(
    snapshot: Snapshot,
    report: Report,
    output_file: Union[str, Path],
    tree: str = "scaled",
    title: str = "",
):
    """
    Saves the snapshot's root image with finding boxes drawn over it.

    Args:
        snapshot: The capture to draw on (usually the scaled one).
        report: The analysis report whose findings are drawn.
        output_file: PNG path to write.
        tree: Which side of each finding ("default" or "scaled") to draw.
        title: Figure title; defaults to the verdict and finding count.
    """
    image = snapshot.image_of(snapshot.root)
    boxes = finding_boxes(snapshot, report, tree)
    height, width = image.shape[:2]

    fig = None
    try:
        fig, ax = plt.subplots(figsize=(max(2.0, width / 100), max(2.0, height / 100)))
        ax.imshow(image, interpolation="nearest")
        for box in boxes:
            rect: Rect = box["rect"]
            color = CATEGORY_COLORS[box["category"]]
            ax.add_patch(Rectangle((rect.x - 0.5, rect.y - 0.5), rect.w, rect.h,
                                   fill=False, edgecolor=color, linewidth=1.5))
            ax.text(rect.x, rect.y - 2, f"#{box['finding']} {box['uid']}", color=color, fontsize=6,
                    verticalalignment="bottom")
        ax.set_axis_off()
        ax.set_title(title or f"{report.verdict}: {len(report.findings)} finding(s)")
        fig.tight_layout()
        fig.savefig(output_file, dpi=150, bbox_inches="tight")
        logger.info(f"Finding overlay saved to {output_file} ({len(boxes)} box(es))")
    finally:
        if fig is not None:
            plt.close(fig)
