"""Cubic residue symbols over Z[w] and spins of prime ideals of Z[zeta12]."""

__version__ = "0.1.0"
