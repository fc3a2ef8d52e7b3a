"""
CLI package

Command-line front end: crystal description files, design synthesis, sweeps
and reports.
"""

from .models import ChannelReport, CommandResponse
from .crystal import (
    ChannelSpec, CrystalSetup, CrystalSpec, SectionSpec, build_crystal, load_crystal,
    load_crystal_spec
)
from .main import build_parser, main

__all__ = [
    "ChannelReport",
    "CommandResponse",
    "ChannelSpec",
    "CrystalSetup",
    "CrystalSpec",
    "SectionSpec",
    "build_crystal",
    "load_crystal",
    "load_crystal_spec",
    "build_parser",
    "main",
]
