"""grforge: exact-arithmetic workbench for forced gradings of integral
quasi-hereditary algebras over a p-modular system (K, O, k)."""

__version__ = "0.1.0"
