"""Exact combinatorics of affine crystals, rigged configurations and
fermionic formulas."""

__version__ = "0.1.0"
