"""Exact computations with total positivity and Plücker positivity in flag varieties."""

from flagpos.errors import ArgumentError, ResourceError, StateError

__version__ = "0.1.0"

__all__ = ["ArgumentError", "ResourceError", "StateError", "__version__"]
