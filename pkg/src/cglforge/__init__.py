"""Quantum cluster structures on CGL extensions: prime elements, seeds, mutation checks."""

__version__ = "0.1.0"
