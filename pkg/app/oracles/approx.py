# app/oracles/approx.py
"""
Stage Approximations of Sets

An ApproxSet is the stage-s guess A_s at a set A together with a log of how
many times each position has flipped. It is a value: every update returns a
new ApproxSet, so a construction can keep the whole history.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import FrozenSet, Iterable, List, Mapping


class StageMismatchError(ValueError):
    """Raised when approximations from different stages are combined."""


def _frozen(mapping: Mapping[int, int]) -> Mapping[int, int]:
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class ApproxSet:
    stage: int = 0
    members: FrozenSet[int] = frozenset()
    changes: Mapping[int, int] = field(default_factory=lambda: _frozen({}), hash=False,
                                       compare=False)

    def __call__(self, position: int) -> int:
        return 1 if position in self.members else 0

    def __contains__(self, position: int) -> bool:
        return position in self.members

    def with_value(self, position: int, bit: int) -> "ApproxSet":
        """Set one position, recording a flip if the value changes."""
        present = position in self.members
        if bool(bit) == present:
            return self
        members = self.members - {position} if present else self.members | {position}
        changes = dict(self.changes)
        changes[position] = changes.get(position, 0) + 1
        return ApproxSet(self.stage, frozenset(members), _frozen(changes))

    def at_stage(self, stage: int) -> "ApproxSet":
        return ApproxSet(stage, self.members, self.changes)

    def change_count(self, position: int) -> int:
        return self.changes.get(position, 0)

    def below(self, bound: int) -> FrozenSet[int]:
        return frozenset(x for x in self.members if x <= bound)

    def max_member(self) -> int:
        return max(self.members) if self.members else 0

    def to_json(self) -> List[int]:
        return sorted(self.members)

    @classmethod
    def of(cls, elements: Iterable[int], stage: int = 0) -> "ApproxSet":
        approx = cls(stage)
        for x in sorted(set(elements)):
            approx = approx.with_value(x, 1)
        return approx


def join(a: ApproxSet, b: ApproxSet) -> ApproxSet:
    """
    A ⊕ B: 2n ∈ A⊕B iff n ∈ A, 2n+1 ∈ A⊕B iff n ∈ B.

    Raises:
        StageMismatchError: If the approximations are at different stages.
    """
    if a.stage != b.stage:
        raise StageMismatchError(f"cannot join stage {a.stage} with stage {b.stage}")
    members = frozenset(2 * n for n in a.members) | frozenset(2 * n + 1 for n in b.members)
    changes = {2 * n: c for n, c in a.changes.items()}
    changes.update({2 * n + 1: c for n, c in b.changes.items()})
    return ApproxSet(a.stage, members, _frozen(changes))
