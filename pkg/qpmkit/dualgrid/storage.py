"""
Design file storage.

A design file is YAML: the design parameters followed by the rendered
domains, one [length_nm, sign] pair per entry. Writes go to a temp file,
the previous file is kept as .backup, then the temp file replaces it.
"""

import logging
import shutil
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml

from qpmkit.errors import ConfigurationError
from qpmkit.grating.models import DomainSequence
from .models import DualGridDesign, ReciprocalBasis
from .tiling import build_tiling

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def design_document(
    design: DualGridDesign,
    sequence: Optional[DomainSequence] = None,
    metadata: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """Plain-data form of a design and its rendered domains (lengths in nm)."""
    sequence = sequence if sequence is not None else build_tiling(design)
    basis = design.basis
    return {
        "format_version": FORMAT_VERSION,
        "metadata": dict(metadata or {}),
        "basis": {
            "targets_per_m": list(basis.targets),
            "basis_vectors_per_m": list(basis.basis_vectors),
            "order_matrix": [list(row) for row in basis.order_matrix],
        },
        "tile_lengths_um": [a * 1e6 for a in design.tile_lengths],
        "duties": list(design.duties),
        "grid_phases": design.phases,
        "total_length_mm": design.total_length * 1e3,
        "duality_tolerance": design.duality_tolerance,
        "domain_count": len(sequence),
        "domains": [[length * 1e9, sign] for length, sign in sequence.domains],
    }


def save_design(
    path: Union[str, Path],
    design: DualGridDesign,
    sequence: Optional[DomainSequence] = None,
    metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """
    Write a design file atomically.

    Args:
        path: Destination file
        design: Dual-grid design
        sequence: Rendered domains (default build_tiling(design))
        metadata: Extra key/values recorded with the design

    Returns:
        Path of the written file
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    temp_file = target.with_name(target.name + ".tmp")
    backup_file = target.with_name(target.name + ".backup")
    document = design_document(design, sequence, metadata)

    try:
        # Save to temporary file first
        with open(temp_file, "w") as f:
            yaml.safe_dump(document, f, sort_keys=False, default_flow_style=None)

        # Create backup of existing file
        if target.exists():
            shutil.copy2(target, backup_file)

        # Atomically replace the design file
        shutil.move(temp_file, target)
    except Exception:
        if temp_file.exists():
            temp_file.unlink()
        raise

    logger.info("Wrote design with %d domains to %s", document["domain_count"], target)
    return target


def load_design(path: Union[str, Path]) -> Tuple[DualGridDesign, DomainSequence]:
    """
    Read a design file.

    The stored domain list is authoritative: it is returned as written,
    not re-rendered from the parameters.

    Args:
        path: Design file

    Returns:
        (design, domains)

    Raises:
        FileNotFoundError: If the file doesn't exist
        ConfigurationError: If the file is not a valid design document
    """
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Design file not found: {file_path}")

    try:
        with open(file_path, "r") as f:
            document = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Design file {file_path} is not valid YAML: {e}") from e

    try:
        basis = document["basis"]
        design = DualGridDesign(
            basis=ReciprocalBasis(
                basis_vectors=basis["basis_vectors_per_m"],
                order_matrix=basis["order_matrix"],
                targets=basis["targets_per_m"],
            ),
            tile_lengths=[a * 1e-6 for a in document["tile_lengths_um"]],
            duties=document["duties"],
            grid_phases=document.get("grid_phases"),
            total_length=document["total_length_mm"] * 1e-3,
            duality_tolerance=document.get("duality_tolerance", 1e-3),
        )
        sequence = DomainSequence(
            domains=[(length * 1e-9, int(sign)) for length, sign in document["domains"]]
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"Invalid design file {file_path}: {e}") from e

    return design, sequence
