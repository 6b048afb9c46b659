# app/schemas/ordinal.py
"""Request and response models for ordinal arithmetic."""

from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.ordinals.cnf import Comparison, OrdinalCNF
from app.schemas.witness import coefficients


class OrdinalPairRequest(BaseModel):
    left: List[int] = Field(..., description="Ordinal as coefficients or text", examples=["w*2+1"])
    right: List[int] = Field(..., description="Ordinal as coefficients or text", examples=["w+3"])

    model_config = ConfigDict(
        json_schema_extra={"example": {"left": "w*2+1", "right": "w+3"}}
    )

    @field_validator("left", "right", mode="before")
    @classmethod
    def parse_side(cls, v):
        return coefficients(v)

    def ordinals(self) -> tuple:
        return OrdinalCNF(self.left), OrdinalCNF(self.right)


class OrdinalResponse(BaseModel):
    text: str = Field(..., examples=["w*3+4"])
    coefficients: List[int] = Field(..., examples=[[4, 3]])
    code: int = Field(..., description="Ordinal code")

    @classmethod
    def of(cls, alpha: OrdinalCNF) -> "OrdinalResponse":
        return cls(text=str(alpha), coefficients=list(alpha.coeffs), code=alpha.code)


class ComparisonResponse(BaseModel):
    result: Comparison = Field(..., examples=["<"])
