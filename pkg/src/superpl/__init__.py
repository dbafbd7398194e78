"""Exact verification kernel for the Poisson-Lie structure on the realified double of SL(m|n)."""

__version__ = "0.1.0"
