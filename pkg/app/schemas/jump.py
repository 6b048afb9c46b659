# app/schemas/jump.py
"""Models for jump-membership requests and stage-view points."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.config import settings

VARIANTS = ("b", "b0", "b1", "i", "tt", "bk")


class JumpMemberRequest(BaseModel):
    variant: str = Field("b", description="Jump variant", examples=["b"])
    base: str = Field("empty", description="Set spec of the base A", examples=["evens"])
    x: int = Field(..., ge=0)
    steps: int = Field(default_factory=lambda: settings.RUN_BUDGET, gt=0)
    k: int = Field(1, ge=0, description="Norm bound of the bk variant")

    model_config = ConfigDict(
        json_schema_extra={"example": {"variant": "b", "base": "evens", "x": 12, "steps": 500}}
    )

    @field_validator("variant", mode="before")
    @classmethod
    def known_variant(cls, v):
        if not isinstance(v, str) or v.lower() not in VARIANTS:
            raise ValueError(f"Variant must be one of: {', '.join(VARIANTS)}")
        return v.lower()


class WitnessInfo(BaseModel):
    i: Optional[int] = None
    bound: Optional[int] = None
    steps: int


class JumpPoint(BaseModel):
    x: int
    status: str = Field(..., examples=["member"])
    witness: Optional[WitnessInfo] = None


class JumpViewResponse(BaseModel):
    variant: str
    stage: int
    points: List[JumpPoint]
    fragile: List[int] = Field(default_factory=list)
