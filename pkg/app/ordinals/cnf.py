# app/ordinals/cnf.py
"""
Ordinals Below ω^ω in Cantor Normal Form

An ordinal ω^d·c_d + ... + ω·c_1 + c_0 is stored as its little-endian
coefficient tuple (c_0, ..., c_d) with no trailing zeros, so each ordinal has
exactly one representation and equality is tuple equality.

Key Concepts:
- Comparison: reversed lexicographic scan from the highest power down
- Natural (commutative) sum +_c: coefficient-wise addition; `a + b` means
  this sum, never ordinary ordinal addition
- units(β): the coefficient c_0
- rank_r(k, l, αs) = ω^k·l +_c Σ α_i +_c u(Σ α_i), the mind-change rank of the
  bounded-jump witness
- Ordinal codes: code(()) = 0, code((c_0,) + rest) = 1 + pair(c_0, code(rest)),
  a bijection between canonical coefficient tuples and the naturals whose
  innermost tail is not a trailing zero

Text form: `w^2*3+w*2+5`; coefficient 1 and zero terms are omitted, zero is `0`.
"""

import re
from enum import Enum
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from app.machine.coding import pair, unpair


class NegativeOrdinalError(ArithmeticError):
    """Raised when a coefficient is negative."""


class OrdinalParseError(ValueError):
    """Raised when ordinal text cannot be parsed."""


class OrdinalBoundError(ArithmeticError):
    """Raised when an ordinal is not below the bound an operation requires."""


class Comparison(str, Enum):
    LESS = "<"
    EQUAL = "="
    GREATER = ">"


@total_ordering
class OrdinalCNF:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        values = [int(c) for c in coeffs]
        if any(c < 0 for c in values):
            raise NegativeOrdinalError(f"negative coefficient in {values}")
        while values and values[-1] == 0:
            values.pop()
        self._coeffs: Tuple[int, ...] = tuple(values)

    @classmethod
    def natural(cls, n: int) -> "OrdinalCNF":
        return cls((n,))

    @classmethod
    def omega_power(cls, k: int, c: int = 1) -> "OrdinalCNF":
        """ω^k · c."""
        return cls((0,) * k + (c,))

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Largest exponent with a nonzero coefficient; -1 for zero."""
        return len(self._coeffs) - 1

    @property
    def units(self) -> int:
        return self._coeffs[0] if self._coeffs else 0

    def coefficient(self, d: int) -> int:
        return self._coeffs[d] if d < len(self._coeffs) else 0

    def is_zero(self) -> bool:
        return not self._coeffs

    def below_power(self, k: int) -> bool:
        """True when self < ω^k."""
        return len(self._coeffs) <= k

    def _key(self) -> Tuple[int, Tuple[int, ...]]:
        return len(self._coeffs), tuple(reversed(self._coeffs))

    def __eq__(self, other):
        if isinstance(other, OrdinalCNF):
            return self._coeffs == other._coeffs
        if isinstance(other, int):
            return self._coeffs == OrdinalCNF.natural(other)._coeffs
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            other = OrdinalCNF.natural(other)
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = OrdinalCNF.natural(other)
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        return natural_sum((self, other))

    __radd__ = __add__

    def __repr__(self) -> str:
        return f"OrdinalCNF({str(self)!r})"

    def __str__(self) -> str:
        return format_ordinal(self)

    @property
    def code(self) -> int:
        return ordinal_code(self)

    def to_json(self) -> List[int]:
        return list(self._coeffs)

    @classmethod
    def parse(cls, text: str) -> "OrdinalCNF":
        return parse_ordinal(text)


ZERO = OrdinalCNF()
ONE = OrdinalCNF.natural(1)
OMEGA = OrdinalCNF.omega_power(1)


def compare(a: OrdinalCNF, b: OrdinalCNF) -> Comparison:
    if a == b:
        return Comparison.EQUAL
    return Comparison.LESS if a < b else Comparison.GREATER


def natural_sum(terms: Iterable[OrdinalCNF]) -> OrdinalCNF:
    """
    Commutative sum: add coefficients power by power.

    Example:
        >>> str(natural_sum([OrdinalCNF.parse("w*2+1"), OrdinalCNF.parse("w+3")]))
        'w*3+4'
    """
    total: List[int] = []
    for term in terms:
        coeffs = term.coeffs
        if len(coeffs) > len(total):
            total.extend([0] * (len(coeffs) - len(total)))
        for d, c in enumerate(coeffs):
            total[d] += c
    return OrdinalCNF(total)


def units(b: OrdinalCNF) -> int:
    return b.units


def rank_r(k: int, l: int, alphas: Sequence[OrdinalCNF]) -> OrdinalCNF:
    """
    ω^k·l +_c α_0 +_c ... +_c α_m +_c u(α_0 +_c ... +_c α_m).

    Raises:
        ValueError: If k < 1 or l < 0.
        OrdinalBoundError: If some α_i ≥ ω^k.
    """
    if k < 1 or l < 0:
        raise ValueError(f"rank_r needs k >= 1 and l >= 0, got k={k}, l={l}")
    for alpha in alphas:
        if not alpha.below_power(k):
            raise OrdinalBoundError(f"{alpha} is not below w^{k}")
    total = natural_sum(alphas)
    return natural_sum((OrdinalCNF.omega_power(k, l), total, OrdinalCNF.natural(total.units)))


def format_ordinal(alpha: OrdinalCNF) -> str:
    terms = []
    for d in range(alpha.degree, -1, -1):
        c = alpha.coefficient(d)
        if c == 0:
            continue
        if d == 0:
            terms.append(str(c))
            continue
        base = "w" if d == 1 else f"w^{d}"
        terms.append(base if c == 1 else f"{base}*{c}")
    return "+".join(terms) if terms else "0"


_TERM = re.compile(r"^(?:(\d+)|w(?:\^(\d+))?(?:\*(\d+))?)$")


def parse_ordinal(text: str) -> OrdinalCNF:
    """
    Parse the text form; terms may come in any order and repeat.

    Raises:
        OrdinalParseError: On malformed text.
    """
    compact = re.sub(r"\s+", "", text).replace("ω", "w")
    if not compact:
        raise OrdinalParseError("empty ordinal text")
    parts = []
    for term in compact.split("+"):
        match = _TERM.match(term)
        if match is None:
            raise OrdinalParseError(f"cannot parse ordinal term {term!r} in {text!r}")
        natural, exponent, coefficient = match.groups()
        if natural is not None:
            parts.append(OrdinalCNF.natural(int(natural)))
        else:
            k = int(exponent) if exponent is not None else 1
            parts.append(OrdinalCNF.omega_power(k, int(coefficient) if coefficient else 1))
    return natural_sum(parts)


def ordinal_code(alpha: OrdinalCNF) -> int:
    code = 0
    for c in reversed(alpha.coeffs):
        code = 1 + pair(c, code)
    return code


@lru_cache(maxsize=262144)
def ordinal_decode(code: int) -> Optional[OrdinalCNF]:
    """Inverse of `ordinal_code`; None for codes of non-canonical tuples."""
    if code < 0:
        return None
    coeffs = []
    while code > 0:
        c, code = unpair(code - 1)
        coeffs.append(c)
    if coeffs and coeffs[-1] == 0:
        return None
    return OrdinalCNF(coeffs)


def ordinals_below(bound: OrdinalCNF, max_code: int) -> Iterator[Tuple[int, OrdinalCNF]]:
    """
    (code, ordinal) for every ordinal below `bound` with code <= max_code, in
    code order.
    """
    found = [
        (code, OrdinalCNF(coeffs))
        for code, coeffs in _canonical_codes(bound.degree + 1, max_code)
    ]
    found.sort(key=lambda item: item[0])
    for code, alpha in found:
        if alpha < bound:
            yield code, alpha


def _canonical_codes(max_len: int, limit: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    if limit < 0:
        return
    yield 0, ()
    if max_len == 0:
        return
    for rest_code, rest in _canonical_codes(max_len - 1, limit):
        c = 0 if rest else 1
        while True:
            code = 1 + pair(c, rest_code)
            if code > limit:
                break
            yield code, (c,) + rest
            c += 1


def level_ordinal(k: int, level: int, rest: OrdinalCNF) -> OrdinalCNF:
    """ω^k·level +_c rest, for rest < ω^k."""
    return natural_sum((OrdinalCNF.omega_power(k, level), rest))


def grid(max_len: int, max_coeff: int) -> List[OrdinalCNF]:
    """All ordinals with at most max_len coefficients, each <= max_coeff."""
    from itertools import product

    seen = {}
    for length in range(max_len + 1):
        for coeffs in product(range(max_coeff + 1), repeat=length):
            alpha = OrdinalCNF(coeffs)
            seen[alpha.coeffs] = alpha
    return sorted(seen.values())
