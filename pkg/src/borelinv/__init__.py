"""Exact computations with Borel, parabolic and GL invariants of truncated
polynomial rings over finite fields."""

__version__ = "0.1.0"
