"""
Configuration settings for tlhom.
"""
import os
from dataclasses import dataclass, field

from ..errors import UsageError

BUDGET_ENV = "TLHOM_BUDGET"


@dataclass
class RingDefaults:
    """Coefficient ring used when --ring is omitted."""
    ring: str = "Q"  # Z, Q or Fp:<p>
    theta: str = "theta1"  # theta1: (lambda, mu) = (-1, v); theta2: (v^2, -v)


@dataclass
class ResolutionConfig:
    """Free resolution settings."""
    budget: int = 20000  # total R-dimension allowed per stage
    max_degree: int = 4


@dataclass
class OutputConfig:
    """Output settings."""
    json: bool = False
    save_dir: str | None = None


@dataclass
class AppConfig:
    """Main application configuration."""
    ring: RingDefaults = field(default_factory=RingDefaults)
    resolution: ResolutionConfig = field(default_factory=ResolutionConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    # Debug settings
    log_level: str = "WARNING"


def resolution_budget(config: AppConfig | None = None) -> int:
    """
    The resolution budget: $TLHOM_BUDGET when set, otherwise the configured value.

    Without an explicit config the project's tlhom.yaml is read, falling back to
    the dataclass defaults when there is none.

    Raises:
        UsageError: If the environment variable is not a positive integer
    """
    raw = os.environ.get(BUDGET_ENV)
    if raw is not None and raw.strip():
        try:
            value = int(raw)
        except ValueError as exc:
            raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc
        if value <= 0:
            raise UsageError(f"{BUDGET_ENV} must be positive, got {value}")
        return value
    if config is None:
        from ..utils.config_loader import load_config
        config = load_config()
    return config.resolution.budget


# Default configuration instance
default_config = AppConfig()
