# app/schemas/trace.py
"""
Trace Record Schemas

A trace file is JSON-lines: one header line, then one record per stage.
"""

from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field, field_validator

CONSTRUCTIONS = ("strinc", "shoenfield", "ttsep")


class TraceHeader(BaseModel):
    schema_version: int = Field(..., ge=1)
    construction: str = Field(..., examples=["shoenfield"])
    params: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {"schema_version": 1, "construction": "ttsep", "params": {"N": 3, "stages": 400}}
        }
    )

    @field_validator("construction", mode="before")
    @classmethod
    def known_construction(cls, v):
        if v not in CONSTRUCTIONS:
            raise ValueError(f"Construction must be one of: {', '.join(CONSTRUCTIONS)}")
        return v


class StageRecord(BaseModel):
    stage: int = Field(..., ge=0)
    events: Dict[str, Any] = Field(default_factory=dict)
