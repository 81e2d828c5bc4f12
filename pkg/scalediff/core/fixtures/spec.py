# scalediff/core/fixtures/spec.py

"""
Models describing a synthetic corpus: page shape, scale settings and the
scaling bugs to inject into the larger-scale capture.
"""

import json
import logging
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..errors import MissingFile, SchemaViolation
from ..findings import IssueCategory
from ..snapshot.models import DEFAULT_SCALE, Rect, ScaleSetting

logger = logging.getLogger(__name__)

DEFAULT_SCREEN = Rect(x=0, y=0, w=360, h=640)
DEFAULT_LARGER_SCALE = ScaleSetting(label="LL", display_scale=1.25, font_scale=1.25)

# Pick the candidate by position, or pseudo-randomly from the case's seed.
TargetSelector = Union[Literal["first", "last", "random"], int]


class TreeShape(BaseModel):
    """Page layout parameters (sizes in dp)."""
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    rows: int = Field(5, ge=1, le=40, description="Rows of widgets in the scrolling column.")
    fan_out: int = Field(3, ge=1, le=6, alias="fanOut", description="Maximum widgets per row.")
    text_ratio: float = Field(0.5, ge=0.0, le=1.0, alias="textRatio", description="Share of widgets that are text views.")
    list_items: int = Field(3, ge=0, le=20, alias="listItems", description="Items in the repeated list (0 for none).")
    drawer: bool = Field(False, description="Add a collapsible drawer panel over the content.")
    ellipsize_ratio: float = Field(0.0, ge=0.0, le=1.0, alias="ellipsizeRatio")


class BugInjection(BaseModel):
    """A scaling bug applied to the larger-scale tree only."""
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    kind: IssueCategory
    target: TargetSelector = "random"
    magnitude: Optional[int] = Field(None, ge=1, description="Shift px (overlap) or dropped glyphs (text).")
    variant: Optional[Literal["freeze", "truncate", "icon"]] = None

    @model_validator(mode="after")
    def _variant_fits_kind(self) -> "BugInjection":
        if self.variant is not None and self.kind != IssueCategory.CONTENT_CROPPING:
            raise ValueError(f"variant applies to ContentCropping only, not {self.kind.value}")
        return self


class FixtureSpec(BaseModel):
    """One batch of synthetic pages sharing a shape, scale pair and injections."""
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    seed: int = 0
    cases: int = Field(1, ge=1)
    screen: Rect = DEFAULT_SCREEN
    tree_shape: TreeShape = Field(default_factory=TreeShape, alias="treeShape")
    scale_pair: Tuple[ScaleSetting, ScaleSetting] = Field(
        (DEFAULT_SCALE, DEFAULT_LARGER_SCALE), alias="scalePair"
    )
    injections: List[BugInjection] = Field(default_factory=list)

    @field_validator("screen", mode="before")
    @classmethod
    def _parse_screen(cls, value):
        return Rect.from_list(value)

    @model_validator(mode="after")
    def _default_first(self) -> "FixtureSpec":
        if self.scale_pair[0].label != "DD":
            raise ValueError("the first setting of scalePair must be DD")
        return self


def load_fixture_specs(path: Union[str, Path]) -> List[FixtureSpec]:
    """
    Reads a fixture spec JSON file holding one spec object or a list of them.

    Raises:
        MissingFile: The file does not exist.
        SchemaViolation: The JSON is malformed or fails validation.
    """
    spec_path = Path(path)
    if not spec_path.is_file():
        raise MissingFile(f"Fixture spec not found: {spec_path}")
    try:
        with open(spec_path, "r", encoding="utf-8") as f:
            document = json.load(f)
        items = document if isinstance(document, list) else [document]
        specs = [FixtureSpec.model_validate(item) for item in items]
    except (json.JSONDecodeError, ValidationError) as e:
        raise SchemaViolation(f"{spec_path}: {e}") from e
    logger.debug(f"Loaded {len(specs)} fixture spec(s) from {spec_path}")
    return specs
