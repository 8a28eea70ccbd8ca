"""Configuration loader for tlhom.

Loads configuration from tlhom.yaml with fallback to the dataclass defaults.
"""

import logging
from pathlib import Path

import yaml

from ..config.settings import AppConfig, OutputConfig, ResolutionConfig, RingDefaults

logger = logging.getLogger(__name__)

CONFIG_NAME = "tlhom.yaml"


def get_project_root() -> Path:
    """Get the project root directory."""
    # Start from the working directory and go up to find pyproject.toml
    current = Path.cwd().resolve()
    for parent in (current, *current.parents):
        if (parent / "pyproject.toml").exists():
            return parent
    return current


def load_config(config_path: str | Path | None = None) -> AppConfig:
    """Load configuration from a YAML file.

    Args:
        config_path: Path to config file. If None, looks for tlhom.yaml in the
            project root and falls back to defaults when there is none.

    Returns:
        AppConfig with loaded settings.

    Raises:
        FileNotFoundError: If an explicit config file doesn't exist.
        yaml.YAMLError: If the config file is invalid.
    """
    if config_path is None:
        config_path = get_project_root() / CONFIG_NAME
        if not config_path.exists():
            return AppConfig()
    else:
        config_path = Path(config_path)
        if not config_path.exists():
            raise FileNotFoundError(
                f"Config file not found: {config_path}\n"
                f"Create {CONFIG_NAME} in the project root or pass an existing path."
            )

    with open(config_path, 'r') as f:
        config_dict = yaml.safe_load(f) or {}
    logger.debug("Loaded config from %s", config_path)

    ring_dict = config_dict.get('ring') or {}
    ring = RingDefaults(
        ring=str(ring_dict.get('ring', RingDefaults.ring)),
        theta=ring_dict.get('theta', RingDefaults.theta),
    )

    res_dict = config_dict.get('resolution') or {}
    resolution = ResolutionConfig(
        budget=int(res_dict.get('budget', ResolutionConfig.budget)),
        max_degree=int(res_dict.get('max_degree', ResolutionConfig.max_degree)),
    )

    out_dict = config_dict.get('output') or {}
    output = OutputConfig(
        json=bool(out_dict.get('json', OutputConfig.json)),
        save_dir=out_dict.get('save_dir'),
    )

    return AppConfig(
        ring=ring,
        resolution=resolution,
        output=output,
        log_level=config_dict.get('log_level', AppConfig.log_level),
    )
