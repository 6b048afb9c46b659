# app/machine/corpus.py
"""
A Small Program Corpus

Named programs used by the verification suites, the CLI examples and the
tests. Indices are computed once at import.
"""

from typing import Dict

from app.machine.instructions import CALL, DECJZ, HALT, INC, PAIR, QRY
from app.machine.program import IDENTITY, LOOP_INDEX, encode
from app.machine.transforms import compose_programs, constant_program

SUCCESSOR = encode((INC(0), HALT()))

# x ↦ C(x)
QUERY_INPUT = encode((QRY(0, 0), HALT()))

# halts iff x ∈ C; a 0 answer lands on a self-jump
HALT_IF_MEMBER = encode((QRY(0, 1), DECJZ(1, 1), HALT()))

# x ↦ C(2x)
DOUBLE_QUERY = encode((
    DECJZ(0, 4), INC(1), INC(1), DECJZ(2, 0),
    QRY(1, 0), HALT(),
))

# x ↦ 2x + 1
DOUBLE_PLUS_ONE = encode((
    DECJZ(0, 4), INC(1), INC(1), DECJZ(2, 0),
    INC(1),
    DECJZ(1, 8), INC(0), DECJZ(2, 5),
    HALT(),
))

# ⟨y, x⟩ ↦ y + x
ADDITION = encode((
    CALL("fst", 0, 1), CALL("snd", 0, 0),
    DECJZ(1, 5), INC(0), DECJZ(2, 2),
    HALT(),
))

PROJECT_FST = encode((CALL("fst", 0, 0), HALT()))
PROJECT_SND = encode((CALL("snd", 0, 0), HALT()))
SELF_PAIR = encode((PAIR(0, 0, 0), HALT()))


def acceptability_corpus() -> Dict[str, int]:
    """Ten programs for the s-m-n and padding grids, one of them divergent."""
    return {
        "identity": IDENTITY,
        "successor": SUCCESSOR,
        "constant-0": constant_program(0),
        "constant-7": constant_program(7),
        "fst": PROJECT_FST,
        "snd": PROJECT_SND,
        "addition": ADDITION,
        "self-pair": SELF_PAIR,
        "double-plus-one": DOUBLE_PLUS_ONE,
        "loop": LOOP_INDEX,
    }


def oracle_corpus() -> Dict[str, int]:
    """Programs that read their oracle."""
    return {
        "query-input": QUERY_INPUT,
        "double-query": DOUBLE_QUERY,
        "halt-if-member": HALT_IF_MEMBER,
        "successor-then-query": compose_programs(QUERY_INPUT, SUCCESSOR),
    }
