"""Configuration management for pointlike_lab.

This module handles loading, saving, and validating the computation limits
(enumeration caps, face caps, word lengths) that bound every brute-force
operation in the library.
"""

import json
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, Optional

from rich.console import Console

console = Console(stderr=True)

MAX_ORDER_ENV_VAR = "POINTLIKE_LAB_MAX_ORDER"

# Enumeration of all tables is hopeless beyond this order.
HARD_ENUMERATION_CAP = 5


@dataclass(frozen=True)
class Limits:
    """Caps applied by the library's exhaustive operations."""

    max_product_order: int = 4096
    max_congruence_order: int = 6
    max_enumeration_order: int = HARD_ENUMERATION_CAP
    max_word_length: int = 4
    max_complex_base: int = 16
    max_faces: int = 65536
    default_oracle_bound: int = 3


def get_config_dir() -> Path:
    """Get the pointlike_lab configuration directory path.

    Returns:
        Path to ~/.pointlike_lab directory
    """
    return Path.home() / ".pointlike_lab"


def get_config_path() -> Path:
    """Get the pointlike_lab configuration file path.

    Returns:
        Path to ~/.pointlike_lab/config.json
    """
    return get_config_dir() / "config.json"


def ensure_config_dir() -> None:
    """Create configuration directory if it doesn't exist."""
    config_dir = get_config_dir()
    if not config_dir.exists():
        config_dir.mkdir(parents=True, exist_ok=True)
        console.print(f"[green]Created config directory: {config_dir}[/green]")


def get_default_config() -> Dict:
    """Get default configuration template.

    Returns:
        Dictionary with default configuration values
    """
    defaults = Limits()
    return {
        "limits": {
            "max_product_order": defaults.max_product_order,
            "max_congruence_order": defaults.max_congruence_order,
            "max_enumeration_order": defaults.max_enumeration_order,
            "max_word_length": defaults.max_word_length,
            "max_complex_base": defaults.max_complex_base,
            "max_faces": defaults.max_faces,
            "default_oracle_bound": defaults.default_oracle_bound,
        },
        "checks": {
            "default_law_order": 3,
        },
    }


def load_config() -> Dict:
    """Load configuration from ~/.pointlike_lab/config.json.

    Returns:
        Configuration dictionary

    Raises:
        FileNotFoundError: If config file doesn't exist
        json.JSONDecodeError: If config file is malformed
    """
    config_path = get_config_path()

    if not config_path.exists():
        raise FileNotFoundError(
            f"Configuration file not found at {config_path}. "
            "Run 'pointlike-lab config init' to create it."
        )

    with open(config_path, 'r') as f:
        config = json.load(f)

    return config


def load_settings() -> Dict:
    """The config file when it exists and parses, otherwise the defaults.

    Commands call this once and hand the result to :func:`get_limits` and
    :func:`get_default_law_order`.
    """
    try:
        return load_config()
    except (FileNotFoundError, json.JSONDecodeError):
        return get_default_config()


def save_config(config: Dict) -> None:
    """Save configuration to ~/.pointlike_lab/config.json.

    Args:
        config: Configuration dictionary to save
    """
    ensure_config_dir()
    config_path = get_config_path()

    with open(config_path, 'w') as f:
        json.dump(config, f, indent=2, sort_keys=True)

    console.print(f"[green]Configuration saved to {config_path}[/green]")


def validate_config(config: Dict) -> bool:
    """Validate configuration structure and limit values.

    Args:
        config: Configuration dictionary to validate

    Returns:
        True if valid, False otherwise
    """
    if "limits" not in config or "checks" not in config:
        console.print("[red]Invalid config: missing 'limits' or 'checks'[/red]")
        return False

    known = set(get_default_config()["limits"])
    for key, value in config["limits"].items():
        if key not in known:
            console.print(f"[red]Invalid config: unknown limit '{key}'[/red]")
            return False
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            console.print(f"[red]Invalid config: limit '{key}' must be a positive integer[/red]")
            return False

    law_order = config["checks"].get("default_law_order", 3)
    if not isinstance(law_order, int) or not 1 <= law_order <= HARD_ENUMERATION_CAP:
        console.print("[red]Invalid config: 'default_law_order' must be between 1 and 5[/red]")
        return False

    return True


def get_limits(config: Optional[Dict] = None) -> Limits:
    """Resolve the effective limits.

    Precedence is environment > config file > built-in defaults. The
    enumeration cap never exceeds HARD_ENUMERATION_CAP.

    Args:
        config: Explicit configuration dictionary (default: the config file
            if one exists, otherwise the defaults)

    Returns:
        Immutable Limits value
    """
    if config is None:
        config = load_settings()

    values = dict(get_default_config()["limits"])
    values.update({k: v for k, v in config.get("limits", {}).items() if k in values})
    limits = Limits(**values)

    override = os.getenv(MAX_ORDER_ENV_VAR)
    if override:
        try:
            limits = replace(limits, max_enumeration_order=int(override))
        except ValueError:
            console.print(f"[yellow]Warning: ignoring non-integer {MAX_ORDER_ENV_VAR}={override!r}[/yellow]")

    capped = max(1, min(limits.max_enumeration_order, HARD_ENUMERATION_CAP))
    return replace(limits, max_enumeration_order=capped)


def get_default_law_order(config: Optional[Dict] = None) -> int:
    """Order of the universe used by `check-laws` when none is given."""
    if config is None:
        config = load_settings()
    return int(config.get("checks", {}).get("default_law_order", 3))
