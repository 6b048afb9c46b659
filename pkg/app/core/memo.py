# app/core/memo.py
"""
Horizon Memo

Bounded, thread-safe memo for stage-indexed computations. `compute(key,
horizon)` must return a result whose part up to any smaller horizon is what
that smaller horizon would have produced, so one stored result answers every
request at or below its horizon.
"""

import logging
import threading
from collections import OrderedDict
from typing import Callable, Generic, Hashable, Tuple, TypeVar

logger = logging.getLogger(__name__)

V = TypeVar("V")


class HorizonMemo(Generic[V]):
    """
    A request past the stored horizon recomputes at no less than twice it.
    Least recently used keys go once more than `limit` are held.
    """

    def __init__(self, compute: Callable[[Hashable, int], V], limit: int):
        self.compute = compute
        self.limit = limit
        self._entries: "OrderedDict[Hashable, Tuple[int, V]]" = OrderedDict()
        self._lock = threading.Lock()

    def lookup(self, key: Hashable, horizon: int) -> Tuple[int, V]:
        """(stored horizon, result) with stored horizon >= `horizon`."""
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None:
                self._entries.move_to_end(key)
        if entry is not None and entry[0] >= horizon:
            return entry
        target = horizon if entry is None else max(horizon, 2 * entry[0])
        entry = (target, self.compute(key, target))
        with self._lock:
            current = self._entries.get(key)
            if current is None or current[0] < target:
                self._entries[key] = entry
            self._entries.move_to_end(key)
            while len(self._entries) > self.limit:
                self._entries.popitem(last=False)
                logger.debug("memo at its limit of %d keys, dropped the oldest", self.limit)
        return entry

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        return len(self._entries)
