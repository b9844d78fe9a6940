"""Turaev genus, Kauffman bracket and Jones polynomial of link diagrams."""

from .polynomial import LaurentPoly, MultiPoly

__version__ = "0.1.0"
