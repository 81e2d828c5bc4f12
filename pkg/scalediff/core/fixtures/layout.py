# scalediff/core/fixtures/layout.py

"""
Logical page trees (sizes in dp / sp) and their layout at a scale setting.

A page is a FrameLayout holding a ScrollView whose content column stacks
flow-wrapped rows of widgets and, optionally, a list of repeated items; an
optional drawer panel sits on top. Layout converts dp to px with the display
scale and text sizes with display x font scale, wrapping rows so every widget
stays inside its container at any scale.
"""

import logging
import math
from typing import Iterator, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..errors import GeometryOverflow
from ..snapshot.models import Rect, ScaleSetting
from .spec import TreeShape

logger = logging.getLogger(__name__)

# --- Constants (dp unless noted) ---
PAD_DP = 4
GAP_DP = 4
ICON_DP = 36
BUTTON_H_DP = 32
BUTTON_W_DP = (48, 112)  # inclusive range; widths are unique per page
DRAWER_W_DP = 56
TEXT_SP = (14, 16, 18)
MAX_TEXT_CHARS = 10
MAX_CANVAS_PX = 16384

# Glyph block proportions relative to the rendered text size.
GLYPH_WIDTH = 0.5
GLYPH_GAP = 0.2
GLYPH_DESCENT = 0.15
GLYPH_HEIGHTS = (0.5, 0.6, 0.7)

WORDS = (
    "Inbox", "Settings", "Profile", "Search", "Upload", "Gallery", "Music", "Maps",
    "Weather", "Notes", "Camera", "Contacts", "Wallet", "Alarm", "Photos", "News",
    "Mail", "Chat", "Files", "Health", "Books", "Radio", "Tasks", "Share",
)

Role = Literal["frame", "scroll", "column", "row", "list", "item", "button", "icon", "text", "drawer"]
Color = Tuple[int, int, int, int]
Ink = Tuple[int, int, int]
BarBox = Tuple[float, float, float, float]  # x0, y0, x1, y1 as fractions of the icon


# --- Logical tree ---

class FixtureView(BaseModel):
    """A view of the logical page, independent of scale."""
    uid: str
    mapping_id: Optional[str] = None
    role: Role
    class_name: str
    z_order: int = 0
    text: Optional[str] = None
    text_sp: Optional[float] = None
    ellipsized: bool = False
    scroll_hint: Optional[bool] = None
    width_dp: int = 0
    height_dp: int = 0
    fill: Color = (255, 255, 255, 255)
    ink: Ink = (0, 0, 0)
    bars: List[BarBox] = Field(default_factory=list)
    bar_inks: List[Ink] = Field(default_factory=list)
    children: List["FixtureView"] = Field(default_factory=list)


FixtureView.model_rebuild()


class LaidOutView(BaseModel):
    """A FixtureView placed in px at one scale setting; injections mutate these."""
    view: FixtureView
    bounds: Rect
    text_size: Optional[float] = None
    glyph_size: Optional[float] = None
    glyph_limit: Optional[int] = None
    pad: int = 0
    dropped_bars: List[int] = Field(default_factory=list)
    children: List["LaidOutView"] = Field(default_factory=list)

    @property
    def uid(self) -> str:
        return self.view.uid

    @property
    def role(self) -> str:
        return self.view.role

    def walk(self) -> Iterator["LaidOutView"]:
        """Pre-order traversal."""
        yield self
        for child in self.children:
            yield from child.walk()


LaidOutView.model_rebuild()


# --- Glyph geometry ---

def _round(value: float) -> int:
    return int(math.floor(value + 0.5))


def glyph_boxes(text: str, size: float, pad: int, limit: Optional[int] = None) -> List[Rect]:
    """
    Pseudo-glyph rectangles for `text` rendered at `size` px, in view-local
    coordinates. Spaces advance without drawing; `limit` caps the number of
    characters drawn.
    """
    width = max(1, _round(size * GLYPH_WIDTH))
    gap = max(1, _round(size * GLYPH_GAP))
    bottom = pad + max(1, _round(size)) - _round(size * GLYPH_DESCENT)
    drawn = text if limit is None else text[:limit]
    boxes = []
    for i, char in enumerate(drawn):
        if char.isspace():
            continue
        height = max(1, _round(size * GLYPH_HEIGHTS[ord(char) % len(GLYPH_HEIGHTS)]))
        top = max(pad, bottom - height)
        boxes.append(Rect(x=pad + i * (width + gap), y=top, w=width, h=bottom - top))
    return boxes


def text_extent(text: str, size: float, pad: int) -> Tuple[int, int]:
    """(w, h) in px of a text view showing `text` at `size` px."""
    width = max(1, _round(size * GLYPH_WIDTH))
    gap = max(1, _round(size * GLYPH_GAP))
    advance = len(text) * width + max(0, len(text) - 1) * gap
    return 2 * pad + advance, 2 * pad + max(1, _round(size))


def glyph_signature(text: str, sp: float) -> Tuple:
    """Texts with equal signatures render to identical glyph patterns."""
    return (sp,) + tuple(None if c.isspace() else ord(c) % len(GLYPH_HEIGHTS) for c in text)


# --- Page construction ---

class _PageBuilder:
    """Builds one logical page from a TreeShape and a seeded generator."""

    def __init__(self, shape: TreeShape, rng: np.random.Generator):
        self.shape = shape
        self.rng = rng
        self.counter = 0
        self.signatures = set()
        self.button_widths = set()

    def _uid(self) -> str:
        uid = f"v{self.counter}"
        self.counter += 1
        return uid

    def _color(self, low: int, high: int) -> Color:
        r, g, b = (int(v) for v in self.rng.integers(low, high + 1, size=3))
        return (r, g, b, 255)

    def _ink(self, low: int, high: int) -> Ink:
        return tuple(int(v) for v in self.rng.integers(low, high + 1, size=3))

    def _text(self) -> Tuple[str, float]:
        """A short text whose glyph pattern is unique on the page."""
        for _ in range(200):
            sp = float(self.rng.choice(TEXT_SP))
            word = str(self.rng.choice(WORDS))
            suffix = str(int(self.rng.integers(1, 100)))
            text = f"{word} {suffix}"[:MAX_TEXT_CHARS].rstrip()
            signature = glyph_signature(text, sp)
            if signature not in self.signatures:
                self.signatures.add(signature)
                return text, sp
        raise GeometryOverflow("Could not find a unique text pattern for the page")

    def text_view(self, mapping_id: str) -> FixtureView:
        text, sp = self._text()
        ellipsized = bool(self.rng.random() < self.shape.ellipsize_ratio)
        return FixtureView(
            uid=self._uid(), mapping_id=mapping_id, role="text", class_name="android.widget.TextView",
            text=text, text_sp=sp, ellipsized=ellipsized,
            fill=self._color(215, 250), ink=self._ink(10, 70),
        )

    def icon_view(self, mapping_id: str) -> FixtureView:
        vertical = bool(self.rng.random() < 0.5)
        stripes = [(0.1, 0.3), (0.4, 0.6), (0.7, 0.9)]
        lo, hi = sorted(float(v) for v in self.rng.uniform(0.1, 0.9, size=2))
        lo, hi = min(lo, 0.3), max(hi, 0.7)
        bars = [(a, lo, b, hi) if vertical else (lo, a, hi, b) for a, b in stripes]
        return FixtureView(
            uid=self._uid(), mapping_id=mapping_id, role="icon", class_name="android.widget.ImageView",
            width_dp=ICON_DP, height_dp=ICON_DP,
            fill=self._color(200, 245), bars=bars, bar_inks=[self._ink(15, 95) for _ in bars],
        )

    def _button_width(self) -> int:
        """A button width no other button on the page uses.

        Buttons are uniform blocks, so two of equal size match each other
        exactly under normalized correlation whatever their colors.
        """
        low, high = BUTTON_W_DP
        free = [w for w in range(low, high + 1) if w not in self.button_widths]
        if not free:
            raise GeometryOverflow(f"More than {high - low + 1} buttons on one page")
        width = int(self.rng.choice(free))
        self.button_widths.add(width)
        return width

    def button_view(self, mapping_id: str) -> FixtureView:
        return FixtureView(
            uid=self._uid(), mapping_id=mapping_id, role="button", class_name="android.widget.Button",
            width_dp=self._button_width(), height_dp=BUTTON_H_DP,
            fill=self._color(40, 200),
        )

    def widget(self) -> FixtureView:
        mapping_id = f"widget_{self.counter}"
        if self.rng.random() < self.shape.text_ratio:
            return self.text_view(mapping_id)
        if self.rng.random() < 0.5:
            return self.icon_view(mapping_id)
        return self.button_view(mapping_id)

    def row(self, index: int) -> FixtureView:
        uid = self._uid()
        count = int(self.rng.integers(1, self.shape.fan_out + 1))
        return FixtureView(
            uid=uid, mapping_id=f"row_{index}", role="row", class_name="android.widget.LinearLayout",
            fill=self._color(180, 250), children=[self.widget() for _ in range(count)],
        )

    def list_view(self) -> FixtureView:
        uid = self._uid()
        items = []
        for k in range(self.shape.list_items):
            item_uid = self._uid()
            items.append(FixtureView(
                uid=item_uid, mapping_id="list_item", role="item", class_name="android.widget.LinearLayout",
                fill=self._color(180, 250),
                children=[self.icon_view("item_icon"), self.text_view(f"item_label_{k}")],
            ))
        return FixtureView(
            uid=uid, mapping_id="list", role="list", class_name="androidx.recyclerview.widget.RecyclerView",
            fill=self._color(180, 250), children=items,
        )

    def page(self) -> FixtureView:
        root_uid = self._uid()
        scroll_uid = self._uid()
        column_uid = self._uid()
        content = [self.row(i) for i in range(self.shape.rows)]
        if self.shape.list_items:
            content.append(self.list_view())
        column = FixtureView(
            uid=column_uid, mapping_id="content", role="column", class_name="android.widget.LinearLayout",
            fill=self._color(180, 250), children=content,
        )
        scroll = FixtureView(
            uid=scroll_uid, mapping_id="scroll", role="scroll", class_name="android.widget.ScrollView",
            fill=self._color(180, 250), children=[column],
        )
        children = [scroll]
        if self.shape.drawer:
            children.append(FixtureView(
                uid=self._uid(), mapping_id="drawer", role="drawer",
                class_name="androidx.drawerlayout.widget.DrawerLayout",
                z_order=1, width_dp=DRAWER_W_DP, fill=self._color(60, 160),
            ))
        return FixtureView(
            uid=root_uid, mapping_id="root", role="frame", class_name="android.widget.FrameLayout",
            fill=self._color(180, 250), children=children,
        )


def build_page(shape: TreeShape, rng: np.random.Generator) -> FixtureView:
    """Builds a logical page; all randomness comes from `rng`."""
    return _PageBuilder(shape, rng).page()


# --- Layout ---

def _px(dp: float, scale: ScaleSetting) -> int:
    return _round(dp * scale.display_scale)


def _check_canvas(rect: Rect, uid: str):
    if rect.w > MAX_CANVAS_PX or rect.h > MAX_CANVAS_PX:
        raise GeometryOverflow(f"View '{uid}' is {rect.w}x{rect.h} px, above the {MAX_CANVAS_PX} px canvas limit")


def _layout_leaf(view: FixtureView, x: int, y: int, scale: ScaleSetting) -> LaidOutView:
    if view.role == "text":
        size = view.text_sp * scale.text_factor
        pad = _px(PAD_DP, scale)
        w, h = text_extent(view.text, size, pad)
        return LaidOutView(view=view, bounds=Rect(x=x, y=y, w=w, h=h), text_size=size, glyph_size=size, pad=pad)
    return LaidOutView(view=view, bounds=Rect(x=x, y=y, w=_px(view.width_dp, scale), h=_px(view.height_dp, scale)))


def _layout_flow(view: FixtureView, x: int, y: int, width: int, scale: ScaleSetting) -> LaidOutView:
    """Places children left to right, wrapping to a new line when full."""
    pad, gap = _px(PAD_DP, scale), _px(GAP_DP, scale)
    inner = width - 2 * pad
    children: List[LaidOutView] = []
    cursor_x, cursor_y, line_h = 0, 0, 0
    for child in view.children:
        placed = _layout_leaf(child, 0, 0, scale)
        if placed.bounds.w > inner:
            raise GeometryOverflow(f"View '{child.uid}' ({placed.bounds.w} px) does not fit row '{view.uid}' ({inner} px)")
        if cursor_x > 0 and cursor_x + placed.bounds.w > inner:
            cursor_x, cursor_y, line_h = 0, cursor_y + line_h + gap, 0
        placed.bounds = placed.bounds.translate(x + pad + cursor_x, y + pad + cursor_y)
        children.append(placed)
        cursor_x += placed.bounds.w + gap
        line_h = max(line_h, placed.bounds.h)
    bounds = Rect(x=x, y=y, w=width, h=2 * pad + cursor_y + line_h)
    _check_canvas(bounds, view.uid)
    return LaidOutView(view=view, bounds=bounds, children=children)


def _layout_stack(view: FixtureView, x: int, y: int, width: int, scale: ScaleSetting) -> LaidOutView:
    """Stacks children vertically; each child spans the inner width."""
    pad, gap = _px(PAD_DP, scale), _px(GAP_DP, scale)
    children: List[LaidOutView] = []
    cursor_y = y + pad
    for child in view.children:
        if child.role in ("row", "item"):
            placed = _layout_flow(child, x + pad, cursor_y, width - 2 * pad, scale)
        else:
            placed = _layout_stack(child, x + pad, cursor_y, width - 2 * pad, scale)
        children.append(placed)
        cursor_y = placed.bounds.bottom + gap
    height = (cursor_y - gap + pad - y) if children else 2 * pad
    bounds = Rect(x=x, y=y, w=width, h=height)
    _check_canvas(bounds, view.uid)
    return LaidOutView(view=view, bounds=bounds, children=children)


def layout_page(root: FixtureView, scale: ScaleSetting, screen: Rect) -> LaidOutView:
    """
    Lays out a logical page at `scale` on a device viewport `screen` (px).

    Raises:
        GeometryOverflow: A widget is wider than its row, or a view exceeds
            the canvas limit.
    """
    children: List[LaidOutView] = []
    for child in root.children:
        if child.role == "scroll":
            column = _layout_stack(child.children[0], screen.x, screen.y, screen.w, scale)
            children.append(LaidOutView(view=child, bounds=screen, children=[column]))
        elif child.role == "drawer":
            bounds = Rect(x=screen.x, y=screen.y, w=min(_px(child.width_dp, scale), screen.w), h=screen.h)
            children.append(LaidOutView(view=child, bounds=bounds))
    laid_out = LaidOutView(view=root, bounds=screen, children=children)
    logger.debug(f"Laid out page at {scale.label}: {sum(1 for _ in laid_out.walk())} views")
    return laid_out
