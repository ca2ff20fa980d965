"""Bend-minimum orthogonal representations of planar 3-graphs."""

__version__ = "0.1.0"
