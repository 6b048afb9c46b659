# app/ershov/__init__.py
"""
Ershov Hierarchy Package

α-c.e. witnesses and their evaluation, the downward and jump transforms of
witnesses, the ω-c.e. / bT-below-∅′ correspondence and the 1-reductions of
ω^k-c.e. sets into ∅^{kb}.
"""

from app.ershov.witness import (
    AlphaCEWitness,
    UnresolvedWitnessError,
    WitnessScript,
    eval_witness,
    halting_witness,
    limit_value,
    witness_history,
)
from app.ershov.transforms import downward_transform, jump_transform
from app.ershov.omega import omega_ce_iff_bT_halting
from app.ershov.reductions import erbase_reduce, inductive_reduce

__all__ = [
    "AlphaCEWitness",
    "UnresolvedWitnessError",
    "WitnessScript",
    "downward_transform",
    "erbase_reduce",
    "eval_witness",
    "halting_witness",
    "inductive_reduce",
    "jump_transform",
    "limit_value",
    "omega_ce_iff_bT_halting",
    "witness_history",
]
