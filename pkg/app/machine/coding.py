# app/machine/coding.py
"""
Number Coding Primitives

Every object the workbench hands to a program (pairs, triples, finite
sequences, ordinals, whole programs) is a natural number. This module holds
the arithmetic those codings are built from.

Key Concepts:
- Cantor pairing: pair(x, y) = (x + y)(x + y + 1)/2 + y, a bijection ω² ↔ ω
- Triples are right-nested: ⟨e, i, j⟩ = pair(e, pair(i, j))
- Elias gamma codes: self-delimiting bit strings for positive integers
- Sequence codes: a finite tuple is the gamma-coded concatenation of its
  entries plus one, read as a binary number behind a leading 1 bit
"""

from functools import lru_cache
from math import isqrt
from typing import Iterable, Optional, Sequence, Tuple


def pair(x: int, y: int) -> int:
    """
    Cantor pairing of two naturals.

    Example:
        >>> pair(1, 2)
        8
    """
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> Tuple[int, int]:
    """Inverse of `pair`."""
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def fst(z: int) -> int:
    return unpair(z)[0]


def snd(z: int) -> int:
    return unpair(z)[1]


def triple(e: int, i: int, j: int) -> int:
    """⟨e, i, j⟩ = pair(e, pair(i, j))."""
    return pair(e, pair(i, j))


def untriple(z: int) -> Tuple[int, int, int]:
    e, rest = unpair(z)
    i, j = unpair(rest)
    return e, i, j


def gamma(n: int) -> str:
    """
    Elias gamma code of a positive integer.

    Raises:
        ValueError: If n is not positive.
    """
    if n < 1:
        raise ValueError(f"Gamma codes are defined for positive integers, got {n}")
    body = bin(n)[2:]
    return "0" * (len(body) - 1) + body


def read_gamma(bits: str, pos: int) -> Optional[Tuple[int, int]]:
    """
    Read one gamma code from `bits` starting at `pos`.

    Returns:
        (value, next position), or None when the bits end before a full code.
    """
    first = bits.find("1", pos)
    if first < 0:
        return None
    end = 2 * first - pos + 1
    if end > len(bits):
        return None
    return int(bits[first:end], 2), end


def encode_seq(items: Iterable[int]) -> int:
    """
    Code a finite sequence of naturals as a single natural.

    The empty sequence codes to 0 and the coding is a bijection onto the
    numbers whose bits parse completely.
    """
    bits = "".join(gamma(x + 1) for x in items)
    return int("1" + bits, 2) - 1


@lru_cache(maxsize=65536)
def decode_seq(code: int) -> Optional[Tuple[int, ...]]:
    """Inverse of `encode_seq`; None for numbers that do not parse."""
    if code < 0:
        return None
    bits = bin(code + 1)[3:]
    pos = 0
    items = []
    while pos < len(bits):
        read = read_gamma(bits, pos)
        if read is None:
            return None
        value, pos = read
        items.append(value - 1)
    return tuple(items)


def seq_params(code: int, arity: int) -> Optional[Sequence[int]]:
    """Decode a parameter tuple of a known arity, None on mismatch."""
    items = decode_seq(code)
    if items is None or len(items) != arity:
        return None
    return items
