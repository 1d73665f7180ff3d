"""Knot shadow toolkit: plane maps, bracket invariants, and guaranteed
unknot-diagram generation."""

__version__ = "0.1.0"
