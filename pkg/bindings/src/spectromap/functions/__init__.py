from .spectromap import peak_search, spectromap

__all__ = ["spectromap", "peak_search"]
