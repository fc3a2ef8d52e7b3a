"""
qpmkit - Concurrent Quasi-Phasematching Design Toolkit

Dispersion models, phase-mismatch arithmetic, periodic and dual-grid poling
structures, and SHG tuning-curve simulation for multigrating crystals.
"""

__version__ = "0.1.0"
