"""Exact computations with power ideals, zonotopal algebras and their superspace analogues."""

from .arrangement import Arrangement, Flat, TuttePoly, beta, dual_tutte, parse_arrangement, tutte
from .power_ideal import ExponentMap, HilbertFunction, PowerIdeal, hilbert_quotient
from .series import BigradedTable, LaurentSeries
from .superspace import SuperElement, odot, pairing, parse_element
from .super_zonotopal import SuperZonotopal, boolean_B, super_bigraded_hilbert
from .zonotopal import (
    OrderFilter,
    deletion_contraction_sequence,
    truncation_sequence,
    tutte_formula_hilbert,
    zonotopal_hilbert,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "Flat", "TuttePoly", "beta", "dual_tutte", "parse_arrangement", "tutte",
    "ExponentMap", "HilbertFunction", "PowerIdeal", "hilbert_quotient",
    "BigradedTable", "LaurentSeries",
    "SuperElement", "odot", "pairing", "parse_element",
    "SuperZonotopal", "boolean_B", "super_bigraded_hilbert",
    "OrderFilter", "deletion_contraction_sequence", "truncation_sequence",
    "tutte_formula_hilbert", "zonotopal_hilbert",
]
