"""Squares categories, assemblers and K0 at desk scale, with semilinear and polygon instances."""

__version__ = "0.1.0"
