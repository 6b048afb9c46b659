# app/oracles/specs.py
"""
Set Specs

Text names for the base sets the CLI and the HTTP layer accept:

    empty            ∅
    evens, primes    decidable sets
    list:1,4,9       a finite set
    wscript:<path>   the limit of a scripted witness
"""

import logging
from pathlib import Path
from typing import Callable

from app.oracles.sets import EMPTY, EVENS, PRIMES, finite

logger = logging.getLogger(__name__)

OracleFn = Callable[[int], int]


class SetSpecError(ValueError):
    """Raised for a set spec that cannot be built."""


def _finite(arg: str) -> OracleFn:
    try:
        return finite(int(p) for p in arg.split(",") if p.strip())
    except ValueError:
        raise SetSpecError(f"list spec needs comma-separated naturals, got {arg!r}") from None


def _script(arg: str) -> OracleFn:
    from app.ershov.witness import WitnessScript

    path = Path(arg)
    if not path.exists():
        raise SetSpecError(f"witness script {arg} does not exist")
    return finite(WitnessScript.load(path).limit_set())


def parse_set_spec(spec: str) -> OracleFn:
    """
    Build the oracle a set spec names.

    Raises:
        ValueError: "Unsupported set spec" for unknown names.
        SetSpecError: For malformed arguments.
    """
    name, _, arg = spec.partition(":")
    constants = {"empty": EMPTY, "evens": EVENS, "primes": PRIMES}
    builders = {"list": _finite, "wscript": _script}
    if name in constants and not arg:
        return constants[name]
    builder = builders.get(name)
    if builder is None:
        raise ValueError(f"Unsupported set spec: {spec}")
    return builder(arg)
