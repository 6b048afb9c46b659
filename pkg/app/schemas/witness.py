# app/schemas/witness.py
"""
Witness Script Schemas

A witness script is a JSON list (or an object with "entries" and an optional
"bound") of rows {n, ordinal, value, time}. Ordinals are little-endian
coefficient arrays, [c_0, c_1, ...] for ω·c_1 + c_0, or the text form "w*2+1".
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.ordinals.cnf import OrdinalCNF, OrdinalParseError, parse_ordinal


def coefficients(v):
    """Accept a coefficient array, a natural, or ordinal text."""
    if isinstance(v, bool):
        raise ValueError("ordinal must be a coefficient list, a natural or text")
    if isinstance(v, int):
        if v < 0:
            raise ValueError("ordinal coefficients must be non-negative")
        return [v]
    if isinstance(v, str):
        try:
            return list(parse_ordinal(v).coeffs)
        except OrdinalParseError as exc:
            raise ValueError(str(exc)) from None
    if isinstance(v, list):
        if any(not isinstance(c, int) or isinstance(c, bool) or c < 0 for c in v):
            raise ValueError("ordinal coefficients must be non-negative integers")
        return v
    raise ValueError("ordinal must be a coefficient list, a natural or text")


class ScriptEntrySchema(BaseModel):
    n: int = Field(..., ge=0, description="Point of the set", examples=[3])
    ordinal: List[int] = Field(..., description="Little-endian CNF coefficients", examples=[[1, 2]])
    value: int = Field(..., ge=0, le=1, description="Answer at this ordinal", examples=[1])
    time: int = Field(1, ge=1, description="Steps the program spends before answering")

    @field_validator("ordinal", mode="before")
    @classmethod
    def parse_ordinal_field(cls, v):
        return coefficients(v)


class WitnessScriptSchema(BaseModel):
    entries: List[ScriptEntrySchema] = Field(..., description="Scripted convergences")
    bound: Optional[List[int]] = Field(None, description="The ordinal bound α")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "entries": [
                    {"n": 0, "ordinal": [0, 1], "value": 1, "time": 2},
                    {"n": 0, "ordinal": [3], "value": 0, "time": 40},
                ],
                "bound": [0, 0, 1],
            }
        }
    )

    @field_validator("bound", mode="before")
    @classmethod
    def parse_bound(cls, v):
        return None if v is None else coefficients(v)

    @model_validator(mode="after")
    def entries_below_bound(self) -> "WitnessScriptSchema":
        if self.bound is None:
            return self
        bound = OrdinalCNF(self.bound)
        for entry in self.entries:
            if not OrdinalCNF(entry.ordinal) < bound:
                raise ValueError(f"entry ordinal {OrdinalCNF(entry.ordinal)} is not below {bound}")
        return self
