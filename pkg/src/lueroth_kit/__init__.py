"""Exact computations around Lueroth quartics, Bateman points and the Morley skew matrix."""

__version__ = "0.1.0"
