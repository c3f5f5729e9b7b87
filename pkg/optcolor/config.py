"""
Environment configuration.

All tunables come from OPTCOLOR_* environment variables (run.py loads a
local .env first). Values are read at call time, never cached at import.
"""

import os
from typing import Optional

from optcolor.errors import ConfigError

CHUNK_SIZE_VAR = 'OPTCOLOR_CHUNK_SIZE'
MAX_ROUNDS_VAR = 'OPTCOLOR_MAX_ROUNDS'
SWITCH_INTERVAL_VAR = 'OPTCOLOR_SWITCH_INTERVAL'
REPORT_DIR_VAR = 'OPTCOLOR_REPORT_DIR'

DEFAULT_MAX_ROUNDS = 1000
MIN_MAX_ROUNDS = 64
MIN_CHUNK_SIZE = 64
CHUNKS_PER_THREAD = 8
DEFAULT_REPORT_DIR = 'bench_reports'


def _positive_int(name: str) -> Optional[int]:
    raw = os.environ.get(name, '').strip()
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{name} must be >= 1, got {value}")
    return value


def chunk_size_override() -> Optional[int]:
    """Fixed chunk size from OPTCOLOR_CHUNK_SIZE, or None for the adaptive default."""
    return _positive_int(CHUNK_SIZE_VAR)


def max_rounds() -> int:
    """
    Round cap for the termination safeguard.

    Returns:
        OPTCOLOR_MAX_ROUNDS (default 1000), never below 64
    """
    value = _positive_int(MAX_ROUNDS_VAR)
    if value is None:
        value = DEFAULT_MAX_ROUNDS
    return max(MIN_MAX_ROUNDS, value)


def switch_interval() -> Optional[float]:
    """Thread switch interval in seconds to apply during parallel runs, if configured."""
    raw = os.environ.get(SWITCH_INTERVAL_VAR, '').strip()
    if not raw:
        return None
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{SWITCH_INTERVAL_VAR} must be a number of seconds, got {raw!r}")
    if value <= 0:
        raise ConfigError(f"{SWITCH_INTERVAL_VAR} must be > 0, got {value}")
    return value


def report_dir() -> str:
    return os.environ.get(REPORT_DIR_VAR, DEFAULT_REPORT_DIR)
