# scalediff/core/snapshot/models.py

"""
Pydantic models for the view-tree snapshot: rectangles, scale settings, view
nodes and the snapshot container that binds a tree to its decoded images.

Field names are snake_case in Python; the camelCase names used in tree.json
are declared as aliases, and unknown JSON keys are ignored so newer capture
tools can add attributes without breaking older readers.
"""

from functools import cached_property
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

# RGBA pixels, shape (height, width, 4), dtype uint8, straight alpha.
RgbaImage = NDArray[np.uint8]


# --- Geometry ---

class Rect(BaseModel):
    """Axis-aligned pixel rectangle; (x, y) is the top-left corner."""
    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    w: int = Field(ge=0)
    h: int = Field(ge=0)

    @classmethod
    def from_list(cls, values: Any) -> "Rect":
        """Builds a Rect from the [x, y, w, h] form used on disk."""
        if isinstance(values, Rect):
            return values
        if not isinstance(values, (list, tuple)) or len(values) != 4:
            raise ValueError(f"bounds must be a list [x, y, w, h], got {values!r}")
        x, y, w, h = values
        return cls(x=x, y=y, w=w, h=h)

    def to_list(self) -> List[int]:
        return [self.x, self.y, self.w, self.h]

    @property
    def right(self) -> int:
        return self.x + self.w

    @property
    def bottom(self) -> int:
        return self.y + self.h

    @property
    def area(self) -> int:
        return self.w * self.h

    @property
    def is_empty(self) -> bool:
        return self.w == 0 or self.h == 0

    def intersect(self, other: "Rect") -> "Rect":
        """Intersection; an empty overlap yields a zero-sized Rect."""
        x0, y0 = max(self.x, other.x), max(self.y, other.y)
        x1, y1 = min(self.right, other.right), min(self.bottom, other.bottom)
        if x1 <= x0 or y1 <= y0:
            return Rect(x=x0, y=y0, w=0, h=0)
        return Rect(x=x0, y=y0, w=x1 - x0, h=y1 - y0)

    def contains(self, other: "Rect") -> bool:
        return (other.x >= self.x and other.y >= self.y
                and other.right <= self.right and other.bottom <= self.bottom)

    def translate(self, dx: int, dy: int) -> "Rect":
        return Rect(x=self.x + dx, y=self.y + dy, w=self.w, h=self.h)

    def relative_to(self, origin: "Rect") -> "Rect":
        """Re-expresses this rect in the local coordinates of `origin`."""
        return self.translate(-origin.x, -origin.y)

    def slices(self) -> Tuple[slice, slice]:
        """Row/column slices for indexing a (height, width, ...) array."""
        return slice(self.y, self.bottom), slice(self.x, self.right)


# --- Scale settings ---

class ScaleSetting(BaseModel):
    """One of the three capture settings: DD (default), LD, LL."""
    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="ignore")

    label: Literal["DD", "LD", "LL"]
    display_scale: float = Field(1.0, alias="displayScale", ge=1.0)
    font_scale: float = Field(1.0, alias="fontScale", ge=1.0)

    @model_validator(mode="after")
    def _default_is_unit(self) -> "ScaleSetting":
        if self.label == "DD" and (self.display_scale != 1.0 or self.font_scale != 1.0):
            raise ValueError("DD setting requires displayScale = fontScale = 1")
        return self

    @property
    def text_factor(self) -> float:
        """Multiplier applied to text sizes (font scale compounds display scale)."""
        return self.display_scale * self.font_scale


DEFAULT_SCALE = ScaleSetting(label="DD", display_scale=1.0, font_scale=1.0)


# --- View tree ---

class ViewNode(BaseModel):
    """
    A view (leaf widget) or view group in a captured tree.

    `bounds` are absolute screen coordinates. `image_ref` points into the
    owning snapshot's image store; the image contains this view and all of
    its offspring, clipped to `bounds`.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="ignore")

    uid: str
    mapping_id: Optional[str] = Field(None, alias="mappingId")
    class_name: str = Field(alias="className")
    bounds: Rect
    z_order: int = Field(0, alias="zOrder")
    text: Optional[str] = None
    text_size: Optional[float] = Field(None, alias="textSize", gt=0)
    ellipsized: bool = False
    scroll_hint: Optional[bool] = Field(None, alias="scrollHint")
    image_ref: str = Field(alias="image")
    children: List["ViewNode"] = Field(default_factory=list)

    @field_validator("bounds", mode="before")
    @classmethod
    def _parse_bounds(cls, value: Any) -> Rect:
        return Rect.from_list(value)

    @field_serializer("bounds")
    def _dump_bounds(self, bounds: Rect) -> List[int]:
        return bounds.to_list()

    @model_validator(mode="after")
    def _text_has_size(self) -> "ViewNode":
        if self.text is not None and self.text_size is None:
            raise ValueError(f"text view '{self.uid}' has no textSize")
        return self

    @property
    def is_text(self) -> bool:
        return self.text is not None

    @property
    def is_leaf(self) -> bool:
        return not self.children


ViewNode.model_rebuild()


class Snapshot(BaseModel):
    """A page's view tree together with every decoded view image."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scale: ScaleSetting
    root: ViewNode
    images: Dict[str, np.ndarray]  # imageRef -> RgbaImage
    screen: Rect

    @cached_property
    def nodes(self) -> Dict[str, ViewNode]:
        """uid -> node, in pre-order."""
        from .tree import preorder
        return {node.uid: node for node in preorder(self.root)}

    @cached_property
    def parents(self) -> Dict[str, ViewNode]:
        """uid -> parent node (the root has no entry)."""
        from .tree import preorder
        index: Dict[str, ViewNode] = {}
        for node in preorder(self.root):
            for child in node.children:
                index[child.uid] = node
        return index

    def image_of(self, node: ViewNode) -> RgbaImage:
        return self.images[node.image_ref]

    def tree_dict(self) -> Dict[str, Any]:
        """The tree.json document for this snapshot."""
        return {
            "scale": self.scale.model_dump(by_alias=True),
            "screen": self.screen.to_list(),
            "root": self.root.model_dump(by_alias=True, exclude_none=True),
        }
