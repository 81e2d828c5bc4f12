# scalediff/config/models.py

"""
Pydantic models for the scalediff configuration (scalediff.toml).
Uses Pydantic V2 syntax.
"""

from pathlib import Path
from typing import Any, List, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from scalediff.core.interview import (
    DEFAULT_COLLAPSIBLE_CLASSES,
    DEFAULT_SCROLLABLE_CLASSES,
    ExemptionConfig,
)
from scalediff.core.intraview import IntraCheckConfig

# Keys accepted at the top level of a config file and folded into [detection].
FLAT_DETECTION_KEYS = (
    "scrollable_classes",
    "collapsible_classes",
    "area_tolerance",
    "ssim_threshold",
    "icon_match_slack",
)


# --- Helper Functions ---

def _resolve_path(path: Union[str, Path]) -> Path:
    """Resolves and expands user paths."""
    return Path(path).expanduser().resolve()


# --- Model Definitions ---

class DetectionConfig(BaseModel):
    """Detector thresholds and container exemptions."""
    scrollable_classes: List[str] = Field(
        default_factory=lambda: sorted(DEFAULT_SCROLLABLE_CLASSES),
        min_length=1,
        description="Class-name substrings of scrollable containers (children are never cropped).",
    )
    collapsible_classes: List[str] = Field(
        default_factory=lambda: sorted(DEFAULT_COLLAPSIBLE_CLASSES),
        min_length=1,
        description="Class-name substrings of collapsible views (excluded from overlap checks).",
    )
    area_tolerance: float = Field(0.2, gt=0.0, lt=1.0, description="Allowed relative deviation of text area ratio from gamma squared.")
    ssim_threshold: float = Field(0.9, gt=0.0, le=1.0, description="Non-text views below this SSIM are flagged.")
    icon_match_slack: int = Field(1, ge=0, description="Pixel slack when matching unscaled components.")
    workers: int = Field(1, ge=1, description="Threads used for the per-tree and intra-view phases.")

    @field_validator('scrollable_classes', 'collapsible_classes', mode='before')
    @classmethod
    def split_class_list(cls, value: Any) -> Any:
        """Accepts a comma-separated string (as set from the environment)."""
        if isinstance(value, str):
            return [token.strip() for token in value.split(",") if token.strip()]
        return value

    def to_exemptions(self) -> ExemptionConfig:
        return ExemptionConfig(
            scrollable_classes=frozenset(self.scrollable_classes),
            collapsible_classes=frozenset(self.collapsible_classes),
        )

    def to_intra(self) -> IntraCheckConfig:
        return IntraCheckConfig(
            area_tolerance=self.area_tolerance,
            ssim_threshold=self.ssim_threshold,
            icon_match_slack=self.icon_match_slack,
        )


class EvaluationConfig(BaseModel):
    """Corpus evaluation settings."""
    workers: int = Field(1, ge=1, description="Cases analyzed concurrently by `evaluate`.")


class PathsConfig(BaseModel):
    """Where scalediff writes its log files."""
    log_directory: Path = Field(default=Path("./scalediff_logs"), description="Directory for log files.")

    @field_validator('log_directory', mode='before')
    @classmethod
    def resolve_paths_before_validation(cls, value: Any) -> Path:
        """Resolves paths before Pydantic validates them."""
        if isinstance(value, (str, Path)):
            return _resolve_path(value)
        return value


class LoggingConfig(BaseModel):
    """Logging configuration settings."""
    log_file_enabled: bool = Field(False, description="Enable/disable persistent file logging.")
    log_filename_template: str = Field("scalediff_run_{timestamp:%Y%m%d_%H%M%S}.log", description="Naming pattern for log files.")
    log_level_file: str = Field("DEBUG", description="Minimum level for file logs (DEBUG, INFO, WARNING, ERROR, CRITICAL).")
    log_format: str = Field("%(asctime)s [%(levelname)-8s] %(name)-30s - %(message)s (%(filename)s:%(lineno)d)", description="Format string for file log entries.")
    log_level_console: str = Field("WARNING", description="Default minimum level for console output (overridden by verbosity flags).")

    @field_validator('log_level_file', 'log_level_console')
    @classmethod
    def check_log_level(cls, value: str) -> str:
        """Validate log level strings."""
        allowed_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        upper_value = value.upper()
        if upper_value not in allowed_levels:
            raise ValueError(f"Invalid log level '{value}'. Must be one of {allowed_levels}")
        return upper_value


class ScaleDiffConfig(BaseModel):
    """Root configuration model for scalediff."""
    model_config = ConfigDict(
        extra='allow',
        validate_assignment=True,
    )

    detection: DetectionConfig = Field(default_factory=DetectionConfig)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    paths: PathsConfig = Field(default_factory=PathsConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
