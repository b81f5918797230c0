"""nary - exact computations with n-ary algebra structures."""

__version__ = "0.1.0"
