"""Quantum-walk node ranking for directed networks."""

__version__ = "0.1.0"
