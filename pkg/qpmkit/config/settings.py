"""
Settings Module

Environment variables and configuration constants for qpmkit.
"""

import logging
import os
from pathlib import Path
from typing import Optional, Any

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Coefficient data
COEFF_FILE = str(DATA_DIR / "ktp_coefficients.yaml")
DEFAULT_PROFILE = "ktp-default"  # Z/Y index sets + thermo-optic set
EXPANSION_SET = "ktp-expansion-emanueli2003"
COUPLING_SET = "pack2004"
EXAMPLE_CRYSTAL = str(DATA_DIR / "crystals" / "ppktp_1560_concurrent.yaml")
REFERENCE_TEMPERATURE_C = 25.0

# Mismatch arithmetic
SLOPE_STEP_K = 0.1  # Central finite-difference step for d(dk)/dT

# Dual-grid design
DESIGN_LENGTH_M = 5e-3  # Spectrum length used while optimizing
SPLIT_RESOLUTION = 1e-3  # Grid search step for one free split parameter
SIMPLEX_RESOLUTION = 5e-2  # Grid search step on the three-family simplex
MIN_TILE_LENGTH_M = 2e-6  # Fabrication floor on the mean tile length
MAX_ORDER = 2

# Simulation
MAX_WORKERS = 4
TEMPERATURE_STEP_C = 0.25
WAVELENGTH_STEP_NM = 0.05
ODE_MIN_STEPS_PER_DOMAIN = 8

# Logging
LOG_LEVEL = "WARNING"


def get_env_var(
    var_name: str,
    default: Optional[Any] = None,
    var_type: type = str
) -> Optional[Any]:
    """
    Read a QPM_* override from the environment.

    A value that does not convert to var_type is ignored with a warning and
    the default is kept.

    Example:
        step = get_env_var("QPM_SLOPE_STEP_K", 0.1, float)
    """
    value = os.getenv(var_name)
    if value is None or not value.strip():
        return default

    if var_type is bool:
        return value.strip().lower() in ("true", "1", "yes", "on")
    try:
        return var_type(value.strip())
    except ValueError:
        logger.warning("Ignoring %s=%r: not a valid %s, using %r",
                       var_name, value, var_type.__name__, default)
        return default


# Load settings from environment with defaults
COEFF_FILE = get_env_var("QPM_COEFF_FILE", COEFF_FILE)
DEFAULT_PROFILE = get_env_var("QPM_COEFF_SET", DEFAULT_PROFILE)
EXPANSION_SET = get_env_var("QPM_EXPANSION_SET", EXPANSION_SET)
COUPLING_SET = get_env_var("QPM_COUPLING_SET", COUPLING_SET)
REFERENCE_TEMPERATURE_C = get_env_var("QPM_REFERENCE_TEMPERATURE_C", REFERENCE_TEMPERATURE_C, float)
SLOPE_STEP_K = get_env_var("QPM_SLOPE_STEP_K", SLOPE_STEP_K, float)
DESIGN_LENGTH_M = get_env_var("QPM_DESIGN_LENGTH_M", DESIGN_LENGTH_M, float)
SPLIT_RESOLUTION = get_env_var("QPM_SPLIT_RESOLUTION", SPLIT_RESOLUTION, float)
SIMPLEX_RESOLUTION = get_env_var("QPM_SIMPLEX_RESOLUTION", SIMPLEX_RESOLUTION, float)
MIN_TILE_LENGTH_M = get_env_var("QPM_MIN_TILE_LENGTH_M", MIN_TILE_LENGTH_M, float)
MAX_ORDER = get_env_var("QPM_MAX_ORDER", MAX_ORDER, int)
MAX_WORKERS = get_env_var("QPM_MAX_WORKERS", MAX_WORKERS, int)
TEMPERATURE_STEP_C = get_env_var("QPM_TEMPERATURE_STEP_C", TEMPERATURE_STEP_C, float)
WAVELENGTH_STEP_NM = get_env_var("QPM_WAVELENGTH_STEP_NM", WAVELENGTH_STEP_NM, float)
ODE_MIN_STEPS_PER_DOMAIN = get_env_var("QPM_ODE_MIN_STEPS", ODE_MIN_STEPS_PER_DOMAIN, int)
LOG_LEVEL = get_env_var("QPM_LOG_LEVEL", LOG_LEVEL)
