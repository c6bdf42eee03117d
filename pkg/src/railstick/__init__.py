"""Stick rail arcs, planar knotoids, winding numbers, companion knots."""

__version__ = "0.1.0"

from .geometry import (  # noqa: F401
    MultiStickRailArc,
    StickKnot,
    StickLink,
    StickRailArc,
    project,
    stick_count,
    two_stick_pass,
    validate,
)
