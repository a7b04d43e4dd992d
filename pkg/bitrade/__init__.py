"""Latin bitrades, their permutation representation, hypermaps and transversal partitions."""

from __future__ import annotations

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import toml

__version__ = "1.0.0"

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent
CONFIG_ENV_VAR = "BITRADE_CONFIG"

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "oracle": {
        "cap": 18,
    },
    "enumerate": {
        "max_order": 4,
        "workers": 4,
    },
    "tessellate": {
        "radius": 4.0,
        "scale": 48.0,
        "margin": 0.5,
        "shade_color": "#bdbdbd",
        "show_labels": True,
        "show_axes": False,
        "label_font_size": 0.22,
    },
    "logging": {
        "level": "WARNING",
        "format": "[%(asctime)s] %(levelname)s in %(module)s: %(message)s",
    },
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def resolve_config_path(explicit: Optional[str] = None) -> Optional[Path]:
    """
    Locate the TOML configuration file.

    An explicit path or the BITRADE_CONFIG variable must point at an existing
    file. Otherwise the project root and its config/ directory are searched,
    and None means the built-in defaults apply.
    """
    requested = explicit or os.environ.get(CONFIG_ENV_VAR)
    if requested:
        cfg_path = Path(requested)
        if not cfg_path.is_file():
            raise FileNotFoundError(f"Missing configuration file at: {cfg_path}")
        return cfg_path

    for candidate in (PROJECT_ROOT / "config.toml", PROJECT_ROOT / "config" / "config.toml"):
        if candidate.is_file():
            return candidate
    return None


def load_config(explicit: Optional[str] = None) -> Dict[str, Dict[str, Any]]:
    """Return DEFAULT_CONFIG deep-merged with the values of the located TOML file."""
    cfg_path = resolve_config_path(explicit)
    if cfg_path is None:
        logger.debug("No configuration file found; using built-in defaults.")
        return copy.deepcopy(DEFAULT_CONFIG)

    logger.debug("Loading configuration from %s", cfg_path)
    config_data = toml.load(str(cfg_path))
    return _merge(DEFAULT_CONFIG, config_data)
