"""Quandle-coloring invariants of handlebody-link diagrams and the surfaces they bound."""
from .errors import ParseError, StructureError

__version__ = "0.1.0"
__all__ = ["ParseError", "StructureError", "__version__"]
