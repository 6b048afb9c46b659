# app/machine/procedures.py
"""
Native Procedure Registry

`CALL p ra rd` runs procedure number p on register ra and stores the result in
rd. The first three procedures are the universal calls the interpreter runs on
its own frame stack; the rest are Python functions `proc(ctx, arg) -> int`
that charge steps to the shared meter.

The registry is a fixed ordered tuple, so procedure numbers (and with them all
program indices) never depend on import order. Implementations are resolved
lazily, which lets construction modules register programs that call back into
the interpreter without import cycles.
"""

import importlib
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

from app.machine.coding import decode_seq, unpair

APPLY = 0
APPLY_BELOW = 1
APPLY_PLAIN = 2

PROCEDURES: Tuple[Tuple[str, Optional[str]], ...] = (
    ("apply", None),
    ("apply_below", None),
    ("apply_plain", None),
    ("fst", "app.machine.natives:proc_fst"),
    ("snd", "app.machine.natives:proc_snd"),
    ("smn", "app.machine.natives:proc_smn"),
    ("apply_set", "app.machine.natives:proc_apply_set"),
    ("empty_jump_search", "app.machine.natives:proc_empty_jump_search"),
    ("scripted_witness", "app.ershov.witness:proc_scripted_witness"),
    ("halting_witness", "app.ershov.witness:proc_halting_witness"),
    ("downward_chi", "app.ershov.transforms:proc_downward_chi"),
    ("jump_chi", "app.ershov.transforms:proc_jump_chi"),
    ("omega_search_below", "app.ershov.omega:proc_search_below"),
    ("omega_functional", "app.ershov.omega:proc_functional"),
    ("omega_bound", "app.ershov.omega:proc_bound"),
    ("level_search", "app.ershov.reductions:proc_level_search"),
    ("level_search_below", "app.ershov.reductions:proc_level_search_below"),
    ("erbase_v", "app.ershov.reductions:proc_erbase_v"),
    ("erbase_f", "app.ershov.reductions:proc_erbase_f"),
    ("slice_witness", "app.ershov.reductions:proc_slice_witness"),
    ("inductive_v", "app.ershov.reductions:proc_inductive_v"),
    ("inductive_p", "app.ershov.reductions:proc_inductive_p"),
    ("inductive_f", "app.ershov.reductions:proc_inductive_f"),
    ("order_g", "app.jumps.reductions:proc_order_g"),
    ("tt_functional", "app.oracles.truth_tables:proc_tt_functional"),
    ("tt_bound", "app.oracles.truth_tables:proc_tt_bound"),
    ("strinc_f", "app.constructions.strinc:proc_strinc_f"),
    ("shoenfield_gamma", "app.constructions.shoenfield:proc_gamma"),
    ("shoenfield_psi", "app.constructions.shoenfield:proc_psi"),
    ("shoenfield_theta", "app.constructions.shoenfield:proc_theta"),
    ("ttsep_controlled", "app.constructions.ttsep:proc_controlled"),
    ("ershov_reduction", "app.ershov.reductions:proc_ershov_reduction"),
)

PROCEDURE_NAMES: Tuple[str, ...] = tuple(name for name, _ in PROCEDURES)
_IDS = {name: pid for pid, name in enumerate(PROCEDURE_NAMES)}


class UnknownProcedureError(ValueError):
    """Raised when a procedure name is not in the registry."""


def procedure_id(name: str) -> int:
    try:
        return _IDS[name]
    except KeyError:
        raise UnknownProcedureError(f"Unsupported procedure: {name}") from None


@lru_cache(maxsize=None)
def resolve(pid: int) -> Callable:
    """Import the Python implementation of a native procedure."""
    name, target = PROCEDURES[pid]
    if target is None:
        raise UnknownProcedureError(f"Procedure {name} runs on the frame stack")
    module_name, attr = target.split(":")
    return getattr(importlib.import_module(module_name), attr)


def split_params(arg: int, arity: int) -> Tuple[Optional[Sequence[int]], int]:
    """
    Split the argument of a parametric procedure.

    Parametric programs are smn(procedure_program(name), encode_seq(params)),
    so the procedure receives pair(encode_seq(params), x).

    Returns:
        (params or None if malformed, x)
    """
    code, x = unpair(arg)
    params = decode_seq(code)
    if params is None or len(params) != arity:
        return None, x
    return params, x
