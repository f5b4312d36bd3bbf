"""Exact computations for finite-dimensional Leibniz algebras given by structure constants."""

from .algebra import LeibnizAlgebra, bracket, transport
from .exactlin import Subspace, span

__all__ = ["LeibnizAlgebra", "Subspace", "bracket", "span", "transport"]
__version__ = "0.1.0"
