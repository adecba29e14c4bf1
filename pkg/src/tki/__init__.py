"""Exact HOMFLY, Kauffman and Alexander-Conway polynomials of torus knots."""

__version__ = "0.1.0"
