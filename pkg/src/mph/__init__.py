"""Exact invariants of multiparameter persistence modules."""

__version__ = "0.1.0"
