# main.py

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from fastapi.exceptions import RequestValidationError
from typing import Optional
import uvicorn
import logging

from app.core.config import settings
from app.jumps.views import JumpBudget, JumpEnumerator
from app.machine.instructions import ProgramSyntaxError, compile_program
from app.machine.interpreter import run
from app.machine.program import encode
from app.oracles.sets import finite
from app.oracles.specs import SetSpecError, parse_set_spec
from app.ordinals.cnf import (
    NegativeOrdinalError, OrdinalBoundError, OrdinalParseError, compare, natural_sum,
)
from app.schemas.jump import JumpMemberRequest, WitnessInfo
from app.schemas.machine import RunRequest, RunResponse
from app.schemas.ordinal import ComparisonResponse, OrdinalPairRequest, OrdinalResponse

# Setup logging
logging.basicConfig(level=settings.LOG_LEVEL)
logger = logging.getLogger(__name__)

app = FastAPI(title="Bounded Jump Workbench")

# Pydantic model for jump membership answers
class JumpMemberResponse(BaseModel):
    variant: str
    x: int
    member: bool = Field(..., description="Whether x is enumerated within the step budget")
    witness: Optional[WitnessInfo] = None

# Pydantic model for error response
class ErrorResponse(BaseModel):
    error: str = Field(..., description="Error message")

# Request fields grouped by what they describe, for validation messages
ORDINAL_FIELDS = ("left", "right")
BUDGET_FIELDS = ("budget", "steps")

def _field_message(err: dict) -> str:
    field = err["loc"][-1]
    if field in ORDINAL_FIELDS:
        return f"Invalid ordinal '{field}': {err['msg']}"
    if field in BUDGET_FIELDS:
        return f"Invalid step budget '{field}': {err['msg']}"
    return f"{field}: {err['msg']}"

def _error_response(request: Request, kind: str, message: str, status_code: int = 400) -> JSONResponse:
    logger.error(f"{kind} on {request.url.path}: {message}")
    return JSONResponse(status_code=status_code, content={"error": message})

# Custom Exception Handlers
@app.exception_handler(HTTPException)
async def http_exception_handler(request: Request, exc: HTTPException):
    return _error_response(request, "HTTPException", exc.detail, exc.status_code)

@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    error_messages = "; ".join(_field_message(err) for err in exc.errors())
    return _error_response(request, "ValidationError", error_messages)

@app.exception_handler(OrdinalParseError)
@app.exception_handler(NegativeOrdinalError)
@app.exception_handler(OrdinalBoundError)
async def ordinal_exception_handler(request: Request, exc: Exception):
    return _error_response(request, "OrdinalError", f"Invalid ordinal: {exc}")

@app.exception_handler(ProgramSyntaxError)
async def program_exception_handler(request: Request, exc: ProgramSyntaxError):
    return _error_response(request, "ProgramSyntaxError", f"Invalid program: {exc}")

@app.exception_handler(SetSpecError)
async def set_spec_exception_handler(request: Request, exc: SetSpecError):
    return _error_response(request, "SetSpecError", f"Invalid base set: {exc}")

@app.get("/health")
async def health():
    """
    Liveness check with the active default budgets.
    """
    return {"status": "ok", "run_budget": settings.RUN_BUDGET, "jump_width": settings.JUMP_WIDTH}

@app.post("/ordinals/sum", response_model=OrdinalResponse, responses={400: {"model": ErrorResponse}})
async def ordinal_sum_route(request: OrdinalPairRequest):
    """
    Natural sum of two ordinals below ω^ω.
    """
    left, right = request.ordinals()
    return OrdinalResponse.of(natural_sum((left, right)))

@app.post("/ordinals/compare", response_model=ComparisonResponse, responses={400: {"model": ErrorResponse}})
async def ordinal_compare_route(request: OrdinalPairRequest):
    """
    Compare two ordinals: <, = or >.
    """
    left, right = request.ordinals()
    return ComparisonResponse(result=compare(left, right))

@app.post("/machine/run", response_model=RunResponse, responses={400: {"model": ErrorResponse}})
def machine_run_route(request: RunRequest):
    """
    Run a program, given as text or index, within a step budget.
    """
    try:
        index = request.index if request.index is not None else encode(compile_program(request.program))
        outcome = run(index, request.x, request.budget, finite(request.oracle))
        return RunResponse(index=index, status=outcome.status.value, value=outcome.value,
                           steps=outcome.steps, use=outcome.use)
    except ProgramSyntaxError:
        raise
    except ValueError as e:
        logger.error(f"Machine Run Error: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))

@app.post("/jumps/member", response_model=JumpMemberResponse, responses={400: {"model": ErrorResponse}})
def jump_member_route(request: JumpMemberRequest):
    """
    Decide x ∈ A^v at a step budget for a jump variant v.
    """
    try:
        options = {"k": request.k} if request.variant == "bk" else {}
        enumerator = JumpEnumerator.create(request.variant, parse_set_spec(request.base),
                                           JumpBudget(request.steps), **options)
        witness = enumerator.member(request.x)
        return JumpMemberResponse(
            variant=request.variant,
            x=request.x,
            member=witness is not None,
            witness=WitnessInfo(**witness.to_json()) if witness is not None else None,
        )
    except SetSpecError:
        raise
    except ValueError as e:
        logger.error(f"Jump Member Error: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))

if __name__ == "__main__":
    uvicorn.run(app, host="127.0.0.1", port=8000)
