# app/machine/transforms.py
"""
Index Transforms: s-m-n, Padding, Recursion Theorem

All transforms are fixed program templates around `CALL apply`, so they are
total, injective and strictly increasing in each argument.

    smn(e, y)   SET r1 y; PAIR r0 r1 r0; SET r1 e; PAIR r0 r1 r0; CALL apply r0 r0; HALT
                φ_smn(e,y)(x) = φ_e(pair(y, x))
    pad(e, k)   SET r1 k; SET r1 e; PAIR r0 r1 r0; CALL apply r0 r0; HALT
                φ_pad(e,k) = φ_e and pad(e, k) > max(e, k)

Kleene fixed points: the diagonal program D on ⟨u, x⟩ runs φ_{φ_u(u)}(x).
With v the index of u ↦ φ_t(smn(D, u)), the index m = smn(D, v) satisfies
φ_m = φ_{φ_t(m)}. Padding D gives infinitely many fixed points m_0 < m_1 < ...
"""

import logging
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

from app.core.config import settings
from app.machine.coding import decode_seq, encode_seq, unpair
from app.machine.instructions import CALL, HALT, Opcode, PAIR, SET
from app.machine.interpreter import run
from app.machine.procedures import APPLY, PROCEDURE_NAMES, procedure_id
from app.machine.program import decode, encode

logger = logging.getLogger(__name__)


class NonTotalTransformerError(ValueError):
    """Raised when an index transformer does not halt within the construction budget."""


def smn(e: int, y: int) -> int:
    return encode((SET(1, y), PAIR(0, 1, 0), SET(1, e), PAIR(0, 1, 0), CALL("apply", 0, 0), HALT()))


def pad(e: int, k: int) -> int:
    return encode((SET(1, k), SET(1, e), PAIR(0, 1, 0), CALL("apply", 0, 0), HALT()))


def _is_apply_tail(code, start: int) -> bool:
    tail = code[start:]
    return (
        len(tail) == 2
        and tail[0].op is Opcode.CALL
        and tail[0].args == (APPLY, 0, 0)
        and tail[1].op is Opcode.HALT
    )


def unsmn(index: int) -> Optional[Tuple[int, int]]:
    """(e, y) when index = smn(e, y), else None."""
    code = decode(index)
    if len(code) != 6 or not _is_apply_tail(code, 4):
        return None
    a, b, c, d = code[:4]
    if (a.op, b.op, c.op, d.op) != (Opcode.SET, Opcode.PAIR, Opcode.SET, Opcode.PAIR):
        return None
    if a.args[0] != 1 or c.args[0] != 1 or b.args != (0, 1, 0) or d.args != (0, 1, 0):
        return None
    return c.args[1], a.args[1]


def unpad(index: int) -> Optional[Tuple[int, int]]:
    """(e, k) when index = pad(e, k), else None."""
    code = decode(index)
    if len(code) != 5 or not _is_apply_tail(code, 3):
        return None
    a, b, c = code[:3]
    if (a.op, b.op, c.op) != (Opcode.SET, Opcode.SET, Opcode.PAIR):
        return None
    if a.args[0] != 1 or b.args[0] != 1 or c.args != (0, 1, 0):
        return None
    return b.args[1], a.args[1]


def strip_padding(index: int) -> int:
    """Remove any number of pad layers."""
    while True:
        inner = unpad(index)
        if inner is None:
            return index
        index = inner[0]


@lru_cache(maxsize=None)
def procedure_program(name: str) -> int:
    """Index of the program `CALL name r0 r0; HALT`."""
    return encode((CALL(name, 0, 0), HALT()))


def procedure_name(index: int) -> Optional[str]:
    code = decode(index)
    if len(code) == 2 and code[0].op is Opcode.CALL and code[0].args[1:] == (0, 0) \
            and code[1].op is Opcode.HALT:
        return PROCEDURE_NAMES[code[0].args[0]]
    return None


def parametric(name: str, *params: int) -> int:
    """Index of x ↦ procedure `name` on pair(encode_seq(params), x)."""
    procedure_id(name)
    return smn(procedure_program(name), encode_seq(params))


def unparametric(index: int) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """(name, params) when index is a (possibly padded) parametric program."""
    curried = unsmn(strip_padding(index))
    if curried is None:
        return None
    name = procedure_name(curried[0])
    params = decode_seq(curried[1])
    if name is None or params is None:
        return None
    return name, params


def constant_program(c: int) -> int:
    """Index of x ↦ c."""
    return encode((SET(0, c), HALT()))


# D on ⟨u, x⟩: r3 := ⟨u, u⟩, r4 := φ_u(u), output φ_{r4}(x).
DIAGONAL = encode((
    CALL("fst", 0, 1),
    CALL("snd", 0, 2),
    PAIR(3, 1, 1),
    CALL("apply", 3, 4),
    PAIR(0, 4, 2),
    CALL("apply", 0, 0),
    HALT(),
))


def _fixed_point_candidate(t: int, k: int) -> int:
    diagonal = pad(DIAGONAL, k)
    # v(u) = φ_t(smn(D_k, u)), so φ_{smn(D_k, v)}(x) = φ_{φ_v(v)}(x) = φ_{φ_t(m)}(x)
    v = encode((
        SET(1, diagonal),
        PAIR(0, 1, 0),
        CALL("smn", 0, 0),
        SET(1, t),
        PAIR(0, 1, 0),
        CALL("apply", 0, 0),
        HALT(),
    ))
    return smn(diagonal, v)


def _check_total(t: int, m: int, budget: int) -> None:
    outcome = run(t, m, budget)
    if not outcome.halted:
        raise NonTotalTransformerError(
            f"transformer {t} does not halt on {m} within {budget} steps"
        )


def fixed_point_set(t: int, count: int, lower: int = -1,
                    budget: Optional[int] = None) -> List[int]:
    """
    `count` strictly increasing fixed points of t, all above `lower`.

    The k-th candidate uses the diagonal program padded by k; candidates are
    strictly increasing in k, so skipping those <= lower keeps the sequence
    uniformly computable in (t, position).

    Raises:
        NonTotalTransformerError: If φ_t does not halt on a returned index
            within the construction budget.
    """
    budget = settings.CONSTRUCTION_BUDGET if budget is None else budget
    points: List[int] = []
    k = 0
    while len(points) < count:
        m = _fixed_point_candidate(t, k)
        k += 1
        if m <= lower:
            continue
        _check_total(t, m, budget)
        points.append(m)
    logger.debug("fixed points of %d: %d found, padding up to %d", t, count, k - 1)
    return points


def fixed_point(t: int, budget: Optional[int] = None) -> int:
    """m with φ_m = φ_{φ_t(m)}."""
    return fixed_point_set(t, 1, budget=budget)[0]


def constant_transformer(c: int) -> int:
    """Index of the transformer e ↦ c."""
    return constant_program(c)


def quine_transformer() -> int:
    """Index of e ↦ (index of the constant-e function)."""
    project = encode((CALL("fst", 0, 0), HALT()))
    return encode((SET(1, project), PAIR(0, 1, 0), CALL("smn", 0, 0), HALT()))


def compose_programs(outer: int, inner: int) -> int:
    """Index of x ↦ φ_outer(φ_inner(x))."""
    return encode((
        SET(1, inner), PAIR(0, 1, 0), CALL("apply", 0, 0),
        SET(1, outer), PAIR(0, 1, 0), CALL("apply", 0, 0), HALT(),
    ))


def least_padding_above(e: int, floor: int) -> int:
    """Least pad(e, z) > floor; pad is strictly increasing in z."""
    if pad(e, 0) > floor:
        return pad(e, 0)
    lo, hi = 0, 1
    while pad(e, hi) <= floor:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pad(e, mid) > floor:
            hi = mid
        else:
            lo = mid
    return pad(e, hi)


def packed(name: str, *params: int) -> int:
    """
    Index of the program that ignores its input and calls procedure `name`
    on the left-nested pair of params.

    Unlike `parametric`, each parameter is written once as a SET constant, so
    the index grows by two bits per bit of a parameter. The index is strictly
    increasing in the last parameter.

    Raises:
        ValueError: If no params are given.
    """
    if not params:
        raise ValueError("packed programs need at least one parameter")
    first, *rest = params
    code = [SET(1, first)]
    for p in rest:
        code += [SET(2, p), PAIR(1, 1, 2)]
    return encode((*code, CALL(name, 1, 0), HALT()))


def unpack(value: int, arity: int) -> Tuple[int, ...]:
    """Inverse of the pairing `packed` hands to its procedure."""
    items = []
    for _ in range(arity - 1):
        value, last = unpair(value)
        items.append(last)
    items.append(value)
    return tuple(reversed(items))


def constant_above(build: Callable[[int], int], floor: int) -> int:
    """
    Least c of the form 2^j - 1 with build(c) > floor.

    `build` must be strictly increasing in c and gamma-code c + 1 once, so its
    bit length is build(0)'s plus 2j and the search can start just below the
    bit length of floor.
    """
    j = max(0, (floor.bit_length() - build(0).bit_length()) // 2 - 1)
    while build((1 << j) - 1) <= floor:
        j += 1
    return (1 << j) - 1
