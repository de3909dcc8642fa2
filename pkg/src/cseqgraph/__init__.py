"""Desk-scale toolkit for C-sequences, their graphs, suitable colorings and the club-guessing forcing."""

from .ordinals import Ordinal, parse_ordinal

__version__ = "0.1.0"

__all__ = ["Ordinal", "parse_ordinal", "__version__"]
