"""
Exception hierarchy for qpmkit.

Every error raised on purpose by the toolkit derives from ``QPMError`` so the
command-line front end can map it to exit code 1. Errors that signal a bad
argument value also derive from ``ValueError`` (or ``KeyError`` for lookups)
so library callers can catch them the usual way.
"""


class QPMError(Exception):
    """Base class for all toolkit errors."""


class WavelengthRangeError(QPMError, ValueError):
    """Wavelength outside a dispersion model's valid range."""

    def __init__(self, model_name: str, wavelength: float, valid_range: tuple):
        self.model_name = model_name
        self.wavelength = wavelength
        self.valid_range = valid_range
        lo, hi = valid_range
        super().__init__(
            f"Wavelength {wavelength * 1e9:.3f} nm is outside the valid range of "
            f"coefficient set '{model_name}' "
            f"[{lo * 1e9:.1f} nm, {hi * 1e9:.1f} nm]"
        )


class TemperatureRangeError(QPMError, ValueError):
    """Temperature outside the range a model accepts."""


class DomainError(QPMError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class DegenerateFitError(QPMError, ValueError):
    """Calibration points do not determine a line."""


class SearchFailureError(QPMError):
    """A design search found no feasible candidate."""


class BandwidthUndefinedError(QPMError):
    """A curve has no interior maximum or never crosses half its maximum."""


class ConfigurationError(QPMError, ValueError):
    """Invalid sweep grid, crystal description or integration setup."""


class CoefficientSetNotFound(QPMError, KeyError):
    """A named coefficient, coupling or profile set does not exist."""

    def __init__(self, kind: str, name: str, available):
        self.kind = kind
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"{kind} '{name}' not found. "
            f"Available {kind}s: {', '.join(self.available) or '(none)'}"
        )

    def __str__(self) -> str:
        # KeyError would otherwise repr() the message
        return self.args[0]
