"""Simulation and estimation toolkit for RIS-enabled FMCW radar self-localization."""

__version__ = "0.1.0"
