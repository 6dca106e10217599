"""Graph complexes for the Johnson homomorphism of surfaces with one boundary component."""

__version__ = "0.1.0"
