"""Numerical certification of hyperbolic 3-manifold volume bounds."""

__version__ = "0.1.0"
