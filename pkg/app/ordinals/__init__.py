# app/ordinals/__init__.py
"""Ordinals below ω^ω in Cantor normal form."""

from app.ordinals.cnf import (
    Comparison,
    NegativeOrdinalError,
    OMEGA,
    ONE,
    OrdinalBoundError,
    OrdinalCNF,
    OrdinalParseError,
    ZERO,
    compare,
    natural_sum,
    ordinal_code,
    ordinal_decode,
    ordinals_below,
    parse_ordinal,
    rank_r,
    units,
)

__all__ = [
    "Comparison",
    "NegativeOrdinalError",
    "OMEGA",
    "ONE",
    "OrdinalBoundError",
    "OrdinalCNF",
    "OrdinalParseError",
    "ZERO",
    "compare",
    "natural_sum",
    "ordinal_code",
    "ordinal_decode",
    "ordinals_below",
    "parse_ordinal",
    "rank_r",
    "units",
]
