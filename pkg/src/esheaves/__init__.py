"""Kernel and image sheaves of restricted Lie algebra modules on varieties of
elementary subalgebras, computed exactly over finite fields."""

__version__ = "0.1.0"
