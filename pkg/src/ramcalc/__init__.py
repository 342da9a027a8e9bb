"""Exact calculus of Herbrand and bi-Herbrand functions."""
from fractions import Fraction

from .pl import PLFun, JumpTable, Jump

__all__ = ["Fraction", "PLFun", "JumpTable", "Jump"]
__version__ = "0.1.0"
