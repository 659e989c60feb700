"""Tail behaviour of the distribution functions of sigma(n)/n and n/phi(n)."""

__version__ = "0.2.0"
