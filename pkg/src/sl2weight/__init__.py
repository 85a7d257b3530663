"""Exact computation of the sl2 weight system on chord diagrams and of primitive
projections in the Hopf algebra of graphs."""

from .algebra import CasimirPoly, SeriesX
from .chords import ChordDiagram, parse_dow
from .graphs import Graph
from .sl2 import eval, k_closed

__all__ = ["CasimirPoly", "SeriesX", "ChordDiagram", "Graph", "parse_dow", "eval", "k_closed"]
__version__ = "0.1.0"
