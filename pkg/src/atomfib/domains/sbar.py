from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..intlin import IntVec, sub
from .base import RhsContext


@dataclass(frozen=True)
class SbarContext:
    """S̄^(l): integer combinations of A_{l+1..n} that lie in the rhs domain."""

    context: RhsContext
    level: int

    def __post_init__(self):
        if not 0 <= self.level <= self.context.matrix.n:
            raise ValueError(f"level {self.level} outside 0..{self.context.matrix.n}")

    def contains(self, b: Sequence[int]) -> bool:
        b = tuple(b)
        return b in self.context.trailing_span(self.level) and self.context.member(b) is not None

    def preceq(self, b1: Sequence[int], b2: Sequence[int]) -> bool:
        """b1 ⪯_l b2 iff b2 - b1 lies in S̄^(l)."""
        return self.contains(sub(tuple(b2), tuple(b1)))


def member(ctx: RhsContext, b: Sequence[int]) -> Optional[IntVec]:
    return ctx.member(b)


def sbar_member(sctx: SbarContext, b: Sequence[int]) -> bool:
    return sctx.contains(b)


def preceq(sctx: SbarContext, b1: Sequence[int], b2: Sequence[int]) -> bool:
    return sctx.preceq(b1, b2)


def refine_cover(sctx: SbarContext, budget: Optional[int] = None) -> Tuple[IntVec, ...]:
    """Covering set of S̄^(k) for the step to level k+1 (monoid domains only)."""
    ctx = sctx.context
    if ctx.is_lattice:
        raise ValueError("lattice domains refine through min_coeff_in_coset, not a covering set")
    return ctx.covering_set(sctx.level, budget)
