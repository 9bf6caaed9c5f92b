"""symwave - symmetry and steadiness laboratory for 2D dispersive wave models."""

__version__ = "0.1.0"
