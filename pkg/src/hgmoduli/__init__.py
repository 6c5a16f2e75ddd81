"""Hodge-Grothendieck characteristics of genus-0 stable map spaces to Grassmannians.

Quick use::

    >>> from hgmoduli import hodge_report
    >>> hodge_report(2, 4, 0, 2).euler
    72
"""

from .errors import (
    BadRange,
    BoundMismatch,
    CacheCorrupt,
    DivisionInexact,
    HGError,
    IntegralityFailure,
    InternalInconsistency,
    NoConvergence,
    NotInF1,
)
from .exactring import L, LPoly, grassmannian_class, projective_class
from .modulirec import HodgeReport, config_class, hodge_report, mbar_class
from .quotclasses import mor_class, qbar_class, strom_cell_counts
from .symq import SymSeries

__version__ = "0.1.0"

__all__ = [
    "BadRange", "BoundMismatch", "CacheCorrupt", "DivisionInexact", "HGError",
    "IntegralityFailure", "InternalInconsistency", "NoConvergence", "NotInF1",
    "L", "LPoly", "grassmannian_class", "projective_class",
    "HodgeReport", "config_class", "hodge_report", "mbar_class",
    "mor_class", "qbar_class", "strom_cell_counts", "SymSeries",
]
