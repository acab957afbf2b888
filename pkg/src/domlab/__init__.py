"""Capacity, strong capacity, depth and strong depth of groups and polyhedra."""

from .abelian import AbelianGroup, Factor, canonicalize
from .errors import DomlabError, InputError, InvariantError
from .expr import parse_expression
from .finite import CayleyTable, validate
from .free import FreeGroup

__all__ = [
    "AbelianGroup",
    "CayleyTable",
    "DomlabError",
    "Factor",
    "FreeGroup",
    "InputError",
    "InvariantError",
    "canonicalize",
    "parse_expression",
    "validate",
]
__version__ = "0.1.0"
