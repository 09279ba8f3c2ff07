"""Reidemeister-move rewriting of generic immersed curves on surfaces."""

from .core import BLACK, GRAY, CurveDiagram, Face, InvalidDiagram, curve_order, faces, genus, validate, whitney_index

__version__ = "0.1.0"
