# scalediff/core/snapshot/io.py

"""
Reads and writes snapshot directories.

A snapshot directory holds `tree.json` (the view tree, its scale setting and
the device viewport) and an `images/` folder with one 8-bit RGBA PNG per view.
This format stands in for live capture from a device.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Set, Union

import numpy as np
from PIL import Image
from pydantic import ValidationError

from ..errors import DimensionMismatch, MissingFile, SchemaViolation
from .models import Rect, RgbaImage, ScaleSetting, Snapshot, ViewNode
from .tree import preorder

logger = logging.getLogger(__name__)

# --- Constants ---
TREE_FILENAME = "tree.json"
IMAGES_DIRNAME = "images"


# --- Helpers ---

def _read_png(path: Path) -> RgbaImage:
    """Decodes a PNG into an (h, w, 4) uint8 array."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGBA"), dtype=np.uint8).copy()


def _write_png(image: RgbaImage, path: Path):
    Image.fromarray(np.ascontiguousarray(image, dtype=np.uint8)).save(path, format="PNG")


def _parse_tree(document: Any, tree_path: Path) -> Dict[str, Any]:
    """Validates the top-level tree.json document into model instances."""
    if not isinstance(document, dict):
        raise SchemaViolation(f"{tree_path}: top-level JSON value must be an object")
    missing = [key for key in ("scale", "screen", "root") if key not in document]
    if missing:
        raise SchemaViolation(f"{tree_path}: missing top-level field(s) {missing}")
    try:
        return {
            "scale": ScaleSetting.model_validate(document["scale"]),
            "screen": Rect.from_list(document["screen"]),
            "root": ViewNode.model_validate(document["root"]),
        }
    except (ValidationError, ValueError, TypeError) as e:
        raise SchemaViolation(f"{tree_path}: {e}") from e


def _check_unique_uids(root: ViewNode, tree_path: Path):
    seen: Set[str] = set()
    for node in preorder(root):
        if node.uid in seen:
            raise SchemaViolation(f"{tree_path}: duplicate uid '{node.uid}'")
        seen.add(node.uid)


# --- Public API ---

def load_snapshot(path: Union[str, Path]) -> Snapshot:
    """
    Loads a snapshot directory into a fully resolved Snapshot.

    Args:
        path: Directory containing `tree.json` and the PNGs it references.

    Returns:
        Snapshot with every node image decoded and checked against its bounds.

    Raises:
        MissingFile: tree.json or a referenced PNG does not exist.
        SchemaViolation: a field is missing/mistyped or uids repeat.
        DimensionMismatch: a PNG's size differs from its node's bounds.
    """
    snapshot_dir = Path(path)
    tree_path = snapshot_dir / TREE_FILENAME
    if not tree_path.is_file():
        raise MissingFile(f"Snapshot tree not found: {tree_path}")

    logger.debug(f"Loading snapshot tree from {tree_path}")
    try:
        with open(tree_path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaViolation(f"{tree_path}: invalid JSON ({e})") from e

    parsed = _parse_tree(document, tree_path)
    root: ViewNode = parsed["root"]
    _check_unique_uids(root, tree_path)

    images: Dict[str, RgbaImage] = {}
    for node in preorder(root):
        expected = (node.bounds.h, node.bounds.w)
        if node.bounds.is_empty:
            # Zero-area views carry no pixels; PNG cannot encode them.
            images.setdefault(node.image_ref, np.zeros(expected + (4,), dtype=np.uint8))
            continue
        image_path = snapshot_dir / node.image_ref
        image = images.get(node.image_ref)
        if image is None:
            if not image_path.is_file():
                raise MissingFile(f"Image for view '{node.uid}' not found: {image_path}")
            image = _read_png(image_path)
            images[node.image_ref] = image
        # Shared image paths are decoded once but checked against every view using them.
        if image.shape[:2] != expected:
            raise DimensionMismatch(
                f"Image {image_path.name} is {image.shape[1]}x{image.shape[0]} but view "
                f"'{node.uid}' bounds are {node.bounds.w}x{node.bounds.h}"
            )

    snapshot = Snapshot(scale=parsed["scale"], root=root, images=images, screen=parsed["screen"])
    logger.info(f"Loaded snapshot {snapshot_dir} ({len(snapshot.nodes)} views, scale {snapshot.scale.label})")
    return snapshot


def write_snapshot(snapshot: Snapshot, path: Union[str, Path]) -> Path:
    """
    Writes a snapshot directory in the format read by `load_snapshot`.

    Output is deterministic: JSON keys keep model order, PNGs carry no
    timestamps, so equal snapshots produce byte-identical directories.
    """
    snapshot_dir = Path(path)
    snapshot_dir.mkdir(parents=True, exist_ok=True)

    written: Set[str] = set()
    for node in preorder(snapshot.root):
        if node.image_ref in written or node.bounds.is_empty:
            continue
        image_path = snapshot_dir / node.image_ref
        image_path.parent.mkdir(parents=True, exist_ok=True)
        _write_png(snapshot.image_of(node), image_path)
        written.add(node.image_ref)

    tree_path = snapshot_dir / TREE_FILENAME
    with open(tree_path, "w", encoding="utf-8") as f:
        json.dump(snapshot.tree_dict(), f, indent=1, ensure_ascii=False)
        f.write("\n")
    logger.debug(f"Wrote snapshot with {len(written)} images to {snapshot_dir}")
    return snapshot_dir
