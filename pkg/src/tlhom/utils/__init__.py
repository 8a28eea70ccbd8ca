"""Utility functions module."""

from .config_loader import get_project_root, load_config
from .logger import get_logger, setup_logger

__all__ = ["get_logger", "get_project_root", "load_config", "setup_logger"]
