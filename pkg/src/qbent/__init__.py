"""Quadratic bent functions in trace form over GF(2^n)."""

from .field import Field, FieldElement, make_field

__version__ = "0.1.0"

__all__ = ["Field", "FieldElement", "make_field"]
