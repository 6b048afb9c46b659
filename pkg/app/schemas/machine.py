# app/schemas/machine.py
"""Request and response models for running programs."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings


class RunRequest(BaseModel):
    """
    A program given either as text or as an index, an input, a budget and an
    optional finite oracle.
    """
    program: Optional[str] = Field(None, description="Program text, one instruction per line",
                                   examples=["INC r0\nHALT"])
    index: Optional[int] = Field(None, ge=0, description="Program index")
    x: int = Field(0, ge=0, description="Input placed in r0")
    budget: int = Field(default_factory=lambda: settings.RUN_BUDGET, gt=0,
                        description="Step budget")
    oracle: List[int] = Field(default_factory=list, description="Finite oracle set")

    model_config = ConfigDict(
        json_schema_extra={"example": {"program": "INC r0\nHALT", "x": 41, "budget": 100}}
    )

    @model_validator(mode="after")
    def one_program(self) -> "RunRequest":
        if (self.program is None) == (self.index is None):
            raise ValueError("Give exactly one of 'program' and 'index'")
        if any(p < 0 for p in self.oracle):
            raise ValueError("Oracle positions must be non-negative")
        return self


class RunResponse(BaseModel):
    index: int
    status: str = Field(..., examples=["halted"])
    value: Optional[int] = None
    steps: int
    use: int
