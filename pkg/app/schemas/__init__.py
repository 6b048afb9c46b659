# app/schemas/__init__.py
"""
Pydantic Schemas Package

Models validating what crosses the workbench boundary: witness scripts,
HTTP requests and responses, trace records and verification reports.
"""

from app.schemas.witness import ScriptEntrySchema, WitnessScriptSchema
from app.schemas.trace import StageRecord, TraceHeader
from app.schemas.report import PropertyResult, SuiteReport

__all__ = [
    "PropertyResult",
    "ScriptEntrySchema",
    "StageRecord",
    "SuiteReport",
    "TraceHeader",
    "WitnessScriptSchema",
]
