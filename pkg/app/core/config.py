# app/core/config.py
from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Workbench settings loaded from environment variables.

    Every limit notion of the workbench ("diverges", "in the jump", "the limit
    value") is only meaningful relative to an explicit step or stage budget.
    The defaults below are the desk-scale budgets; each one can be overridden
    by an environment variable of the same name or a `.env` file.
    """
    # Default step budget for a single run when a caller does not pass one.
    RUN_BUDGET: int = Field(100_000, gt=0)

    # Budget used to check that an index transformer halts on its fixed point.
    CONSTRUCTION_BUDGET: int = Field(20_000, gt=0)

    # Bound indices i <= x tried by the jump enumerators at any budget; at s steps
    # the width grows by the bit length of s.
    JUMP_WIDTH: int = Field(16, ge=1)

    # Default domain [0, VIEW_SPAN) of a stage view.
    VIEW_SPAN: int = Field(64, ge=1)

    # Inner budgets of iterated jumps default to the square of the outer one.
    NESTED_BUDGET_CAP: int = Field(1_000_000, gt=0)

    # Matched-budget checks re-evaluate at budget * ESCALATION.
    ESCALATION: int = Field(4, ge=2)

    # Shoenfield Step 1 watches the pairs e <= x < min(stage, CONVERGENCE_WINDOW).
    CONVERGENCE_WINDOW: int = Field(4, ge=4)

    # Re-entrant native procedure calls deeper than this count as divergence.
    MAX_CALL_DEPTH: int = Field(64, ge=4)

    # Entries kept by a halting cache; least recently used ones go first.
    CACHE_LIMIT: int = Field(500_000, gt=0)

    # Keys kept by each stage-indexed memo (observation logs, definition lists).
    MEMO_LIMIT: int = Field(4096, gt=0)

    TRACE_SCHEMA_VERSION: int = 1
    LOG_LEVEL: str = "INFO"

    class Config:
        env_file = ".env"
        case_sensitive = True


settings = Settings()
