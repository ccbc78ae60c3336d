#!/usr/bin/env python3
"""
Debug Settings Script
Shows which SLGAL_* overrides are visible and the effective numeric settings.
"""

import os
import sys
from pathlib import Path

from dotenv import load_dotenv

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core.config import Settings, get_settings  # noqa: E402


def debug_environment() -> bool:
    """Print the .env location, the SLGAL_* variables and the resolved settings."""
    print("Settings Debug Tool")
    print("=" * 50)
    print(f"Current working directory: {os.getcwd()}")

    env_path = Path(".env").resolve()
    if env_path.exists():
        print(f".env file found at {env_path}")
        load_dotenv(override=True)
    else:
        print(f"No .env file at {env_path}; defaults and process environment only")

    overrides = sorted(k for k in os.environ if k.startswith("SLGAL_"))
    print(f"\nSLGAL_* variables ({len(overrides)}):")
    for key in overrides:
        print(f"   {key}={os.environ[key]}")

    known = {f"SLGAL_{name.upper()}" for name in Settings.model_fields}
    unknown = [key for key in overrides if key not in known]
    for key in unknown:
        print(f"   unknown setting {key} is ignored")

    get_settings.cache_clear()
    try:
        settings = get_settings()
    except Exception as e:
        print(f"\nSettings failed to validate: {e}")
        return False

    print("\nEffective settings:")
    for name, value in settings.model_dump().items():
        print(f"   {name} = {value}")
    return not unknown


if __name__ == "__main__":
    sys.exit(0 if debug_environment() else 1)
