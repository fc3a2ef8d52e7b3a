"""
Efficiency-curve analysis and file output.
"""

import io
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from qpmkit.errors import BandwidthUndefinedError, ConfigurationError
from .models import AXES, EfficiencyCurve

logger = logging.getLogger(__name__)

ETA_COLUMN = "eta_rel"


def _crossing(x0: float, y0: float, x1: float, y1: float, level: float) -> float:
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def fwhm(curve: EfficiencyCurve) -> float:
    """
    Full width at half of the global maximum, by linear interpolation.

    Args:
        curve: Sampled curve

    Returns:
        Width in the curve's internal x units

    Raises:
        BandwidthUndefinedError: If the maximum sits on the grid boundary or
            the curve never falls to half of it on one side
    """
    x = np.asarray(curve.x)
    y = np.asarray(curve.eta)
    if y.size < 3 or not y.max() > 0:
        raise BandwidthUndefinedError("Curve has no positive interior maximum")
    peak = int(np.argmax(y))
    if peak == 0 or peak == y.size - 1:
        raise BandwidthUndefinedError(
            f"Maximum lies on the grid boundary at {curve.x_name} = {curve.x_display()[peak]:.4g}; "
            f"widen the scan"
        )
    half = 0.5 * y[peak]

    below_left = np.flatnonzero(y[:peak] < half)
    below_right = np.flatnonzero(y[peak + 1:] < half)
    if not below_left.size or not below_right.size:
        raise BandwidthUndefinedError(
            "Curve does not fall below half maximum on both sides of the peak; widen the scan"
        )
    i = below_left[-1]
    j = peak + 1 + below_right[0]
    left = _crossing(x[i], y[i], x[i + 1], y[i + 1], half)
    right = _crossing(x[j - 1], y[j - 1], x[j], y[j], half)
    return float(right - left)


def write_curve_csv(
    curve: EfficiencyCurve,
    path: Optional[Union[str, Path]] = None,
) -> str:
    """
    Serialize a curve as CSV with '#' metadata lines.

    Args:
        curve: Curve to write
        path: Destination file; None only returns the text

    Returns:
        The CSV text
    """
    lines = [f"# x_name: {curve.x_name}", f"# x_unit: {curve.x_unit}"]
    lines.extend(f"# {key}: {value}" for key, value in curve.metadata.items())
    frame = pd.DataFrame({curve.x_name: curve.x_display(), ETA_COLUMN: curve.eta})
    body = frame.to_csv(index=False, float_format="%.10g", lineterminator="\n")
    text = "\n".join(lines) + "\n" + body

    if path is not None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)
        logger.info("Wrote %d samples to %s", len(curve.x), target)
    return text


def read_curve_csv(source: Union[str, Path]) -> EfficiencyCurve:
    """
    Read a curve written by write_curve_csv.

    Raises:
        ConfigurationError: If the x column is not a known curve variable
    """
    text = Path(source).read_text()
    metadata: Dict[str, str] = {}
    for line in text.splitlines():
        if line.startswith("#") and ":" in line:
            key, value = line[1:].split(":", 1)
            metadata[key.strip()] = value.strip()

    frame = pd.read_csv(io.StringIO(text), comment="#")
    x_name = frame.columns[0]
    for variable, (name, _, scale) in AXES.items():
        if name == x_name:
            break
    else:
        raise ConfigurationError(
            f"Unknown curve column '{x_name}'; expected one of "
            f"{', '.join(name for name, _, _ in AXES.values())}"
        )

    metadata.pop("x_name", None)
    metadata.pop("x_unit", None)
    return EfficiencyCurve(
        variable=variable,
        x=(frame[x_name].to_numpy(dtype=float) / scale).tolist(),
        eta=frame[ETA_COLUMN].to_numpy(dtype=float).tolist(),
        metadata=metadata,
    )


def plot_curves(
    curves: Sequence[EfficiencyCurve],
    path: Union[str, Path],
    labels: Optional[List[str]] = None,
    title: str = "",
    normalize: bool = True,
) -> Path:
    """
    Plot curves sharing one variable into a PNG file.

    Args:
        curves: Curves to draw
        path: Output image
        labels: Legend entries (default: process metadata)
        title: Plot title
        normalize: Divide every curve by the largest peak of the set

    Returns:
        Path of the image
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not curves:
        raise ConfigurationError("Nothing to plot")
    scale = max(c.peak for c in curves) if normalize else 1.0
    scale = scale or 1.0

    fig, ax = plt.subplots(figsize=(7, 4))
    for i, curve in enumerate(curves):
        label = labels[i] if labels else curve.metadata.get("process", f"curve {i}")
        ax.plot(curve.x_display(), np.asarray(curve.eta) / scale, label=label)
    ax.set_xlabel(f"{curves[0].x_name} [{curves[0].x_unit}]")
    ax.set_ylabel("relative efficiency" + (" (normalized)" if normalize else ""))
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(target, dpi=120)
    plt.close(fig)
    return target
