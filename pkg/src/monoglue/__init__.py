"""Finitely presented commutative monoids and schemes over F1."""

__version__ = "0.1.0"
