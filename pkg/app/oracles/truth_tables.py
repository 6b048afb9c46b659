# app/oracles/truth_tables.py
"""
Truth-Table Conditions

A condition is a list of positions x_0 ... x_{k-1} and a table with 2^k rows.
A satisfies it when the row Σ_j A(x_j)·2^j of the table is 1.

Codes: the table is the integer with bit r equal to row r, and a condition
codes to pair(encode_seq(positions), table_code). Numbers whose table code
does not fit in 2^k bits, or whose position code does not parse, code no
condition. The always-true condition with no positions has code pair(0, 1) = 2.

A^{tt} is the set of codes of conditions satisfied by A.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from app.machine.coding import decode_seq, encode_seq, pair, unpair
from app.machine.interpreter import Context
from app.oracles.functionals import BTWitness

ALWAYS_TRUE = pair(0, 1)


class UndecidedPositionError(ValueError):
    """Raised when a condition queries a position the oracle cannot decide."""


@dataclass(frozen=True, slots=True)
class TTCondition:
    positions: Tuple[int, ...]
    table_code: int

    def __post_init__(self):
        if self.table_code < 0 or self.table_code.bit_length() > 2 ** len(self.positions):
            raise ValueError(
                f"table code {self.table_code} does not fit {2 ** len(self.positions)} rows"
            )

    @classmethod
    def of(cls, positions: Sequence[int], table: Sequence[int]) -> "TTCondition":
        """Build from explicit table rows."""
        if len(table) != 2 ** len(positions):
            raise ValueError(
                f"a condition on {len(positions)} positions needs "
                f"{2 ** len(positions)} rows, got {len(table)}"
            )
        return cls(tuple(positions), sum(1 << r for r, bit in enumerate(table) if bit))

    @classmethod
    def from_function(cls, positions: Sequence[int],
                      fn: Callable[[Tuple[int, ...]], int]) -> "TTCondition":
        """Build the table from a function of the bit vector (A(x_0), ..., A(x_{k-1}))."""
        k = len(positions)
        table = [1 if fn(tuple((r >> j) & 1 for j in range(k))) else 0 for r in range(2 ** k)]
        return cls.of(positions, table)

    @property
    def size(self) -> int:
        return len(self.positions)

    @property
    def code(self) -> int:
        return pair(encode_seq(self.positions), self.table_code)

    def entry(self, row: int) -> int:
        return (self.table_code >> row) & 1

    def row(self, oracle: Callable[[int], int]) -> int:
        return sum(1 << j for j, x in enumerate(self.positions) if oracle(x))


def decode_condition(code: int) -> Optional[TTCondition]:
    positions_code, table_code = unpair(code)
    positions = decode_seq(positions_code)
    if positions is None or table_code.bit_length() > 2 ** len(positions):
        return None
    return TTCondition(positions, table_code)


def singleton(x: int) -> int:
    """Code of the condition "x ∈ A", the map witnessing A ≤_1 A^{tt}."""
    return TTCondition.of((x,), (0, 1)).code


def tt_eval(condition: TTCondition, oracle: Callable[[int], int],
            decided_below: Optional[int] = None) -> int:
    """
    Apply the table row selected by the oracle.

    Raises:
        UndecidedPositionError: If a position lies at or beyond `decided_below`.
    """
    if decided_below is not None:
        for x in condition.positions:
            if x >= decided_below:
                raise UndecidedPositionError(f"position {x} is not decided (bound {decided_below})")
    return condition.entry(condition.row(oracle))


def in_att(code: int, oracle: Callable[[int], int]) -> int:
    condition = decode_condition(code)
    if condition is None:
        return 0
    return tt_eval(condition, oracle)


def enum_Att_base(oracle: Callable[[int], int], s: int) -> frozenset:
    """Codes c < s of conditions satisfied by the oracle."""
    return frozenset(c for c in range(s) if in_att(c, oracle))


def proc_tt_functional(ctx: Context, arg: int) -> int:
    """Decide whether condition x is satisfied by the oracle; invalid codes answer 0."""
    condition = decode_condition(arg)
    if condition is None:
        return 0
    ctx.charge(condition.size)
    row = sum(1 << j for j, x in enumerate(condition.positions) if ctx.query(x))
    return condition.entry(row)


def proc_tt_bound(ctx: Context, arg: int) -> int:
    condition = decode_condition(arg)
    if condition is None or not condition.positions:
        return 0
    return max(condition.positions)


def canonical_tt_witness() -> BTWitness:
    """The bT reduction A^{tt} ≤_bT A that reads every position of the condition."""
    from app.machine.transforms import procedure_program

    return BTWitness(procedure_program("tt_functional"), procedure_program("tt_bound"))
