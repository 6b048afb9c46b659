# app/constructions/trace.py
"""
Construction Traces and Replay

Every construction records one StageRecord per stage in which something
happened. Marker events share one vocabulary across constructions:

    defined      [{"marker": name, "value": v}, ...]
    undefined    [name, ...]
    extracted    [name, ...]
    enumerated   positions added to A
    removed      positions taken out of A
    restraints   {"m": r(m), ...}

Marker names are JSON values (an int n, or [n, i]); the first element
of a list name, or the int itself, is the n of an n-marker.

replay re-runs the construction from the header parameters and compares the
records one by one; it also re-checks the marker invariants (values of
redefinitions strictly increase, at most one n-marker defined per n) and that
restraints are nondecreasing in m.
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from importlib import import_module
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from app.core.config import settings
from app.schemas.trace import StageRecord, TraceHeader

logger = logging.getLogger(__name__)


class CorruptedTraceError(ValueError):
    """Raised when a trace file cannot be parsed."""


@dataclass
class ConstructionTrace:
    construction: str
    params: Dict[str, Any]
    records: List[StageRecord] = field(default_factory=list)
    schema_version: int = field(default_factory=lambda: settings.TRACE_SCHEMA_VERSION)

    def record(self, stage: int, **events) -> None:
        """Append the events of a stage; empty event lists are dropped."""
        kept = {k: v for k, v in events.items() if v not in (None, [], {}, ())}
        if kept:
            # JSON-native form, so a loaded trace compares equal to a fresh one
            kept = json.loads(json.dumps(kept))
            self.records.append(StageRecord(stage=stage, events=kept))

    @property
    def header(self) -> TraceHeader:
        return TraceHeader(schema_version=self.schema_version, construction=self.construction,
                           params=self.params)

    def to_lines(self) -> List[str]:
        lines = [self.header.model_dump_json()]
        lines.extend(r.model_dump_json() for r in self.records)
        return lines

    def save(self, path: str | Path) -> None:
        Path(path).write_text("\n".join(self.to_lines()) + "\n")

    @classmethod
    def from_lines(cls, lines: List[str]) -> "ConstructionTrace":
        lines = [line for line in lines if line.strip()]
        if not lines:
            raise CorruptedTraceError("empty trace")
        try:
            header = TraceHeader.model_validate_json(lines[0])
            records = [StageRecord.model_validate_json(line) for line in lines[1:]]
        except (ValidationError, ValueError) as exc:
            raise CorruptedTraceError(f"unreadable trace: {exc}") from None
        return cls(header.construction, dict(header.params), records, header.schema_version)

    @classmethod
    def load(cls, path: str | Path) -> "ConstructionTrace":
        return cls.from_lines(Path(path).read_text().splitlines())

    def events(self, name: str) -> List[tuple]:
        """(stage, payload) for every record carrying the event."""
        return [(r.stage, r.events[name]) for r in self.records if name in r.events]


# Invariants ----------------------------------------------------------------


def _n_of(marker) -> Any:
    return marker[0] if isinstance(marker, list) else marker


def _key(marker) -> str:
    return json.dumps(marker)


def marker_violations(trace: ConstructionTrace) -> List[str]:
    """Marker and restraint invariant violations, in stage order."""
    violations: List[str] = []
    last_value: Dict[str, int] = {}
    live: Dict[str, Any] = {}
    for record in trace.records:
        events = record.events
        for marker in events.get("undefined", []) + events.get("extracted", []):
            live.pop(_key(marker), None)
        for item in events.get("defined", []):
            marker, value = item["marker"], item["value"]
            key = _key(marker)
            if key in last_value and value <= last_value[key]:
                violations.append(
                    f"stage {record.stage}: marker {marker} redefined at {value} <= {last_value[key]}"
                )
            last_value[key] = value
            live[key] = marker
        per_n: Dict[str, int] = {}
        for marker in live.values():
            n_key = json.dumps(_n_of(marker))
            per_n[n_key] = per_n.get(n_key, 0) + 1
        for n_key, count in per_n.items():
            if count > 1:
                violations.append(f"stage {record.stage}: {count} markers defined for n={n_key}")
        restraints = events.get("restraints")
        if restraints:
            ordered = [restraints[m] for m in sorted(restraints, key=int)]
            if any(a > b for a, b in zip(ordered, ordered[1:])):
                violations.append(f"stage {record.stage}: restraints decrease in m: {ordered}")
    return violations


# Replay --------------------------------------------------------------------


class ReplayStatus(str, Enum):
    IDENTICAL = "identical"
    CORRUPTED = "corrupted-trace"


@dataclass
class ReplayReport:
    status: ReplayStatus
    first_divergent_stage: Optional[int] = None
    violations: List[str] = field(default_factory=list)

    @property
    def identical(self) -> bool:
        return self.status is ReplayStatus.IDENTICAL

    @property
    def passed(self) -> bool:
        return self.identical and not self.violations

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "first_divergent_stage": self.first_divergent_stage,
            "violations": self.violations,
        }


RUNNERS = {
    "strinc": "app.constructions.strinc:trace_from_params",
    "shoenfield": "app.constructions.shoenfield:trace_from_params",
    "ttsep": "app.constructions.ttsep:trace_from_params",
}


def rerun(construction: str, params: Dict[str, Any]) -> ConstructionTrace:
    target = RUNNERS.get(construction)
    if target is None:
        raise ValueError(f"Unsupported construction: {construction}")
    module_name, attr = target.split(":")
    return getattr(import_module(module_name), attr)(params)


def first_divergence(expected: ConstructionTrace, actual: ConstructionTrace) -> Optional[int]:
    """Stage of the first record that differs, None when the traces agree."""
    for mine, theirs in zip(expected.records, actual.records):
        if mine.stage != theirs.stage:
            return min(mine.stage, theirs.stage)
        if mine.events != theirs.events:
            return mine.stage
    if len(expected.records) != len(actual.records):
        longer = expected if len(expected.records) > len(actual.records) else actual
        return longer.records[min(len(expected.records), len(actual.records))].stage
    return None


def replay(trace: ConstructionTrace) -> ReplayReport:
    """
    Re-run the construction recorded in `trace` and compare bit for bit.

    Returns:
        ReplayReport: identical or corrupted-trace with the first divergent
        stage, plus any invariant violations found in the given trace.
    """
    fresh = rerun(trace.construction, trace.params)
    stage = first_divergence(trace, fresh)
    violations = marker_violations(trace)
    if stage is not None:
        logger.warning("%s trace diverges from its replay at stage %d", trace.construction, stage)
        return ReplayReport(ReplayStatus.CORRUPTED, stage, violations)
    return ReplayReport(ReplayStatus.IDENTICAL, None, violations)
