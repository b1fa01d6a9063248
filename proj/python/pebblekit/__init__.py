"""Exact pebbling on grids and tori.

Vertices are ``(col, row)`` tuples and exact values come back as ``fractions.Fraction``.
"""

from ._pebblekit import *  # noqa: F401,F403
from ._pebblekit import SCHEMA_VERSION, BudgetExceeded, InputError

__all__ = [name for name in dir() if not name.startswith("_")]
