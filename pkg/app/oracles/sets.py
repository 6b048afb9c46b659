# app/oracles/sets.py
"""
Oracles

An oracle is any callable `oracle(position) -> 0 | 1`. The interpreter only
ever calls it; everything else here builds oracles.

Key Concepts:
- FiniteSetOracle: a finite set used as a total oracle (positions outside
  answer 0). This is how A↾x is handed to a functional.
- restrict(A, b): A↾b = {n ∈ A | n ≤ b}; nested restrictions compose by min
- PrefixOracle: strict-prefix semantics, positions past the string block
- PredicateOracle: decidable sets given by a Python predicate (evens, primes)
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, FrozenSet, Iterable, Protocol, Sequence


class Oracle(Protocol):
    def __call__(self, position: int) -> int: ...


class OracleBlocked(Exception):
    """Raised by prefix oracles when a query falls past the known prefix."""

    def __init__(self, position: int):
        super().__init__(f"query at {position} past the oracle prefix")
        self.position = position


@dataclass(frozen=True, slots=True)
class FiniteSetOracle:
    elements: FrozenSet[int] = frozenset()

    def __call__(self, position: int) -> int:
        return 1 if position in self.elements else 0

    def below(self, bound: int) -> "FiniteSetOracle":
        return FiniteSetOracle(frozenset(x for x in self.elements if x <= bound))


EMPTY = FiniteSetOracle()


def finite(elements: Iterable[int]) -> FiniteSetOracle:
    return FiniteSetOracle(frozenset(elements))


@dataclass(frozen=True, slots=True)
class RestrictedOracle:
    """The oracle `base` with every position above `bound` answering 0."""
    base: Callable[[int], int]
    bound: int

    def __call__(self, position: int) -> int:
        if position > self.bound:
            return 0
        return self.base(position)


def restrict(oracle: Callable[[int], int], bound: int) -> Callable[[int], int]:
    """A↾bound as a total oracle."""
    if isinstance(oracle, RestrictedOracle):
        return RestrictedOracle(oracle.base, min(bound, oracle.bound))
    if isinstance(oracle, FiniteSetOracle):
        return oracle.below(bound)
    return RestrictedOracle(oracle, bound)


@dataclass(frozen=True, slots=True)
class PrefixOracle:
    """Characteristic string σ; positions >= |σ| block the computation."""
    bits: Sequence[int]

    def __call__(self, position: int) -> int:
        if position >= len(self.bits):
            raise OracleBlocked(position)
        return 1 if self.bits[position] else 0

    @classmethod
    def of_set(cls, elements: Iterable[int], length: int) -> "PrefixOracle":
        members = set(elements)
        return cls(tuple(1 if i in members else 0 for i in range(length)))


@dataclass(frozen=True)
class PredicateOracle:
    name: str
    predicate: Callable[[int], bool] = field(compare=False)
    limit: int | None = None

    def __call__(self, position: int) -> int:
        if self.limit is not None and position > self.limit:
            return 0
        return 1 if self.predicate(position) else 0

    def capped(self, limit: int) -> "PredicateOracle":
        return PredicateOracle(f"{self.name}∩[0,{limit}]", self.predicate, limit)


@lru_cache(maxsize=65536)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


EVENS = PredicateOracle("evens", lambda n: n % 2 == 0)
PRIMES = PredicateOracle("primes", is_prime)


class ComputedOracle:
    """Memoized oracle backed by a Python function, for derived sets."""

    def __init__(self, name: str, compute: Callable[[int], int]):
        self.name = name
        self._compute = compute
        self._memo: dict[int, int] = {}

    def __call__(self, position: int) -> int:
        value = self._memo.get(position)
        if value is None:
            value = 1 if self._compute(position) else 0
            self._memo[position] = value
        return value

    def __repr__(self) -> str:
        return f"ComputedOracle({self.name!r})"


def members_below(oracle: Callable[[int], int], bound: int) -> FrozenSet[int]:
    """The finite set A↾bound, read position by position."""
    return frozenset(p for p in range(bound + 1) if oracle(p))
