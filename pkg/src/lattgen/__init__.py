"""Generating sets of subspace lattices and their direct products."""

from .field import ALEPH0, GF, QQ, Field, FieldElement, parse_field
from .linalg import Subspace

__version__ = "0.1.0"

__all__ = ["ALEPH0", "GF", "QQ", "Field", "FieldElement", "parse_field", "Subspace", "__version__"]
