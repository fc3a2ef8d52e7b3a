"""
Configuration module for qpmkit

Provides settings and constants for the toolkit.
"""

from . import settings
from .settings import (
    COEFF_FILE,
    DEFAULT_PROFILE,
    EXPANSION_SET,
    COUPLING_SET,
    get_env_var
)

__all__ = [
    "settings",
    "COEFF_FILE",
    "DEFAULT_PROFILE",
    "EXPANSION_SET",
    "COUPLING_SET",
    "get_env_var"
]
