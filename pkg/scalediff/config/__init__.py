# scalediff/config/__init__.py

"""
Configuration management for scalediff.

This package handles loading configuration from files (TOML or JSON),
environment variables, and internal defaults, providing a unified
configuration object.
"""

from .models import DetectionConfig, EvaluationConfig, LoggingConfig, PathsConfig, ScaleDiffConfig
from .loaders import load_configuration

__all__ = [
    "DetectionConfig",
    "EvaluationConfig",
    "LoggingConfig",
    "PathsConfig",
    "ScaleDiffConfig",
    "load_configuration",
]
