"""Configuration module."""

from .settings import (
    AppConfig,
    OutputConfig,
    ResolutionConfig,
    RingDefaults,
    default_config,
    resolution_budget,
)

__all__ = [
    "AppConfig",
    "OutputConfig",
    "ResolutionConfig",
    "RingDefaults",
    "default_config",
    "resolution_budget",
]
