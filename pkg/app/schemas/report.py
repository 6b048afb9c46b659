# app/schemas/report.py
"""Machine-readable verification reports."""

from typing import Any, Dict, List

from pydantic import BaseModel, Field


class PropertyResult(BaseModel):
    name: str = Field(..., examples=["natural sum is commutative"])
    passed: bool
    checked: int = Field(0, ge=0, description="Points or cases checked")
    unresolved: List[Any] = Field(default_factory=list)
    failures: List[Any] = Field(default_factory=list)
    detail: Dict[str, Any] = Field(default_factory=dict)


class SuiteReport(BaseModel):
    suite: str
    results: List[PropertyResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def counts(self) -> Dict[str, int]:
        passed = sum(1 for r in self.results if r.passed)
        return {"passed": passed, "failed": len(self.results) - passed}
