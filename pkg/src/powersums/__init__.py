"""Exact experiments on generalized sums of odd powers S_{k,j}(n)."""

__version__ = "0.1.0"
