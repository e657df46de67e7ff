import logging
import os
from typing import Literal, Optional, Union

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Right-hand-side domain kinds
RhsKind = Literal["lattice", "monoid"]

# CLI output formats
OutputFormat = Literal["text", "json"]

# Benchmark suites reproducing the published tables
BenchSuite = Literal["partition", "partition-homog", "steinberger"]

BENCH_SUITES: tuple = ("partition", "partition-homog", "steinberger")

# Preorder refinement for monoid rhs domains: exact covering set or Hilbert-basis representation
MonoidRefinement = Literal["cover", "hilbert"]

DEFAULT_MONOID_REFINEMENT: MonoidRefinement = "hilbert"

# Completion iteration cap (None = unbounded; termination is guaranteed but unbounded in theory)
DEFAULT_BUDGET: Union[int, None] = None

# Cap on the number of quotient classes / candidates when building a covering set
DEFAULT_COVER_BUDGET: int = 1_000_000

# Default rhs box bound for the brute-force oracle
DEFAULT_ORACLE_BOX: int = 10

DEFAULT_LOG_LEVEL: str = "WARNING"

LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Exit codes of the command-line interface
EXIT_OK: int = 0
EXIT_MISMATCH: int = 2
EXIT_BUDGET: int = 3
EXIT_PARSE: int = 4


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def get_budget(budget: Optional[int] = None) -> Optional[int]:
    """Resolve the completion budget.

    Args:
        budget: Explicit budget. If None, uses ATOMFIB_BUDGET, then DEFAULT_BUDGET.

    Returns:
        Positive iteration cap or None for unbounded
    """
    if budget is not None:
        if budget <= 0:
            raise ValueError(f"budget must be positive, got {budget}")
        return budget
    return _env_int("ATOMFIB_BUDGET") or DEFAULT_BUDGET


def get_cover_budget(budget: Optional[int] = None) -> int:
    """Resolve the covering-set budget (argument, then ATOMFIB_COVER_BUDGET, then default)."""
    if budget is not None:
        if budget <= 0:
            raise ValueError(f"cover budget must be positive, got {budget}")
        return budget
    return _env_int("ATOMFIB_COVER_BUDGET") or DEFAULT_COVER_BUDGET


def get_oracle_box(box: Optional[int] = None) -> int:
    if box is not None:
        return box
    return _env_int("ATOMFIB_ORACLE_BOX") or DEFAULT_ORACLE_BOX


def get_monoid_refinement(refinement: Optional[str] = None) -> MonoidRefinement:
    """Resolve the monoid refinement (argument, then ATOMFIB_MONOID_REFINE, then default)."""
    value = refinement or os.getenv("ATOMFIB_MONOID_REFINE") or DEFAULT_MONOID_REFINEMENT
    if value not in ("cover", "hilbert"):
        raise ValueError(f"Unknown refinement '{value}'. Choose from: cover, hilbert")
    return value  # type: ignore[return-value]


def configure_logging(level: Union[str, int, None] = None) -> None:
    """Install a single stream handler on the package logger.

    Args:
        level: Logging level name or number. If None, uses ATOMFIB_LOG_LEVEL, then DEFAULT_LOG_LEVEL.
    """
    level = level or os.getenv("ATOMFIB_LOG_LEVEL") or DEFAULT_LOG_LEVEL
    if isinstance(level, str):
        level = level.upper()
    root = logging.getLogger("src.atomfib")
    if not any(getattr(h, "_atomfib", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._atomfib = True  # type: ignore[attr-defined]
        root.addHandler(handler)
    root.setLevel(level)
