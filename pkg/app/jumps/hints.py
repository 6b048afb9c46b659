# app/jumps/hints.py
"""
Bound-Index Search

x ∈ A^b asks for some i ≤ x with φ_i(x)↓. At s steps the enumerators try
every i ≤ min(x, search_width(s, width)). The search width is the fixed
width plus the bit length of s, so every i ≤ x is tried from budget
admission_stage(i, width) on.

The reductions of the workbench also know the index the proof has in mind
(v(p(n), n) for f(n), k(i, j) for g(⟨e, i, j⟩), ...). They hand it over as
a BoundHints mapping carried by the JumpBudget of the enumerator that needs
it, never through process state.
"""

from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple

BoundHints = Mapping[int, FrozenSet[int]]

NO_HINTS: BoundHints = MappingProxyType({})


def search_width(steps: int, width: int) -> int:
    return width + max(steps, 0).bit_length()


def admission_stage(i: int, width: int) -> int:
    """Least budget at which bound index i is tried."""
    return 0 if i <= width else 1 << (i - width - 1)


def bound_hints(pairs: Iterable[Tuple[int, Iterable[int]]]) -> Dict[int, FrozenSet[int]]:
    """Collect proposed bound indices per point; indices above the point are dropped."""
    hints: Dict[int, FrozenSet[int]] = {}
    for x, indices in pairs:
        usable = frozenset(i for i in indices if 0 <= i <= x)
        if usable:
            hints[x] = hints.get(x, frozenset()) | usable
    return hints


def merge_hints(*maps: BoundHints) -> Dict[int, FrozenSet[int]]:
    return bound_hints(item for hints in maps for item in hints.items())
