"""Errors specific to the compatibility layer.

Both derive from spectromap_core's root error so callers can keep a single
except clause across the two packages.
"""

from spectromap_core import SpectromapError

__all__ = ["NotYetSearchedError", "NotAMatrixError"]


class NotYetSearchedError(SpectromapError):
    """Peak coordinates were requested before any peak search ran."""


class NotAMatrixError(SpectromapError, TypeError):
    """peak_search needs a 2-D real matrix."""
