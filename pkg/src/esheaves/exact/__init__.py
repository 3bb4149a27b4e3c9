"""Exact arithmetic: finite fields, polynomials, rational functions, matrices."""

from .fields import ExtensionField, Field, FieldElem, PrimeField, gf
from .graded import graded_piece_map
from .linalg import rank, rank_kernel_image, nullspace, image
from .poly import Poly
from .polymat import PolyMatrix, generic_rank
from .ratfunc import RatFunc

__all__ = [
    "ExtensionField", "Field", "FieldElem", "PrimeField", "gf", "graded_piece_map",
    "rank", "rank_kernel_image", "nullspace", "image", "Poly", "PolyMatrix",
    "generic_rank", "RatFunc",
]
