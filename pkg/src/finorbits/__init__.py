"""Finite braid-group orbits of SL(2) monodromy tuples."""
__version__ = "0.1.0"
