"""Numerical toolkit for the combined semiclassical and classical pseudodifferential
calculus on the torus."""
__version__ = "0.1.0"
