"""Compatibility package for the classic spectromap API, backed by
spectromap-core."""

from .errors import NotAMatrixError, NotYetSearchedError
from .functions.spectromap import peak_search, spectromap

__version__ = "0.1.0"

__all__ = ["spectromap", "peak_search", "NotAMatrixError", "NotYetSearchedError"]
