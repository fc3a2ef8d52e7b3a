"""
Data models for the cli package.
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CommandResponse(BaseModel):
    """Standard response format for structured command output."""
    success: bool = Field(description="Whether the command succeeded")
    data: Optional[Any] = Field(default=None, description="The actual result data")
    error: Optional[str] = Field(default=None, description="Error message if the command failed")
    suggestions: List[str] = Field(
        default_factory=list, description="Helpful suggestions for next steps"
    )
    metadata: Dict[str, Any] = Field(
        default_factory=dict, description="Coefficient sets, units and other context"
    )

    def to_json(self) -> str:
        return json.dumps(self.model_dump(), indent=2, sort_keys=False)


class ChannelReport(BaseModel):
    """Concurrence summary of one crystal channel."""
    channel: str = Field(description="Channel name")
    length_mm: float = Field(description="Channel length, mm")
    qpm_temperatures_c: Dict[str, Optional[float]] = Field(
        default_factory=dict, description="First-order QPM temperature per process (None if outside the window)"
    )
    peak_efficiencies: Dict[str, float] = Field(
        default_factory=dict, description="Peak relative efficiency per process"
    )
    peak_coefficients: Dict[str, float] = Field(
        default_factory=dict, description="Peak |G| per process"
    )
    ratios_to_zzz: Dict[str, float] = Field(
        default_factory=dict, description="Peak efficiency of each process over ZZZ"
    )
    plots: List[str] = Field(default_factory=list, description="Written plot files")
