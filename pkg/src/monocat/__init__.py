"""monocat: exact computations in monomorphism categories of quiver
representations over serial Artin rings."""

__version__ = "0.1.0"
