"""Restricted Minkowski sums of fibers and greedy decomposition into atoms."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .domains import RhsContext
from .errors import EmptySummand
from .fiber import FiberEngine
from .intlin import IntVec, add, is_zero, sq_leq, sub

logger = logging.getLogger(__name__)


def dominated_exists(engine: FiberEngine, v: IntVec, b1: IntVec, k: int, level: int) -> Optional[IntVec]:
    """Some w in Q_{b1}^(k) with w ⊑_l v, or None.

    The set {w : w ⊑_l v} is down-closed, so it meets Q_{b1}^(k) iff it
    contains one of the fiber's minimal elements.
    """
    if k > level:
        raise ValueError(f"order {k} exceeds level {level}")
    target = tuple(v[:level])
    for x in engine.region(tuple(b1), k, level):
        if sq_leq(x, target, level):
            return engine.solver(level).lift(x, tuple(b1))
    return None


def restricted_sum_eq(engine: FiberEngine, b1: IntVec, b2: IntVec, k: int, level: int) -> bool:
    """Q_{b1+b2}^(k) = Q_{b1}^(k) ⊕^(l) Q_{b2}^(k).

    Holds iff every ⊑_l-minimal element of the sum fiber dominates some
    element of Q_{b1}^(k); the complement v - w then lies in Q_{b2}^(k).

    Raises:
        EmptySummand: one of the summand fibers is empty
    """
    if k > level:
        raise ValueError(f"order {k} exceeds level {level}")
    b1, b2 = tuple(b1), tuple(b2)
    for b in (b1, b2):
        if engine.is_empty(engine.key(b, k)):
            raise EmptySummand(f"Q_{b}^({k}) is empty")
    lower = engine.region(b1, k, level)
    for v in engine.region(add(b1, b2), k, level):
        if not any(sq_leq(w, v, level) for w in lower):
            return False
    return True


def pi_trivial(engine: FiberEngine, b: IntVec, k: int, level: int) -> bool:
    """π_l(Q_b^(k)) = π_l(Q_0^(k)), for k <= l.

    Both sides agree iff b is an integer combination of A_{l+1..n}: such a
    combination is a point of Q_b^(k) with vanishing first l entries, and
    translating by it maps one projection onto the other.
    """
    if k > level:
        raise ValueError(f"order {k} exceeds level {level}")
    return engine.in_trailing_span(tuple(b), level)


@dataclass(frozen=True)
class Decomposition:
    """Greedy split b = Σ α_i b_i + residual."""

    rhs: IntVec
    atoms: Tuple[Tuple[IntVec, int], ...]
    residual: IntVec

    @property
    def incomplete(self) -> bool:
        return not is_zero(self.residual) and self.residual not in {a for a, _ in self.atoms}

    def multiplicity(self, atom: IntVec) -> int:
        for a, m in self.atoms:
            if a == tuple(atom):
                return m
        return 0

    def to_dict(self) -> dict:
        return {
            "rhs": list(self.rhs),
            "atoms": [{"rhs": list(a), "mult": m} for a, m in self.atoms if m],
            "residual": list(self.residual),
            "incomplete": self.incomplete,
        }


def _peels(engine: FiberEngine, remaining: IntVec, atom: IntVec, k: int, ctx: RhsContext) -> bool:
    rest = sub(remaining, atom)
    if ctx.member(rest) is None or engine.is_empty(engine.key(rest, k)):
        return False
    return restricted_sum_eq(engine, atom, rest, k, engine.n)


def decompose(engine: FiberEngine, b: IntVec, atoms: Sequence[IntVec], k: int, ctx: RhsContext) -> Decomposition:
    """Peel atoms off Q_b^(k) greedily, scanning ``atoms`` in the given order.

    Passes repeat until a full scan peels nothing, so the residual admits no
    further reduction by any atom. The result depends on the atom order.
    """
    remaining = engine.key(b, k).b
    atoms = [tuple(a) for a in atoms]
    mult = [0] * len(atoms)
    progress = True
    while progress and not is_zero(remaining):
        progress = False
        for i, atom in enumerate(atoms):
            if is_zero(atom):
                continue
            while not is_zero(remaining) and _peels(engine, remaining, atom, k, ctx):
                remaining = sub(remaining, atom)
                mult[i] += 1
                progress = True
    result = Decomposition(tuple(b), tuple(zip(atoms, mult)), remaining)
    if result.incomplete:
        logger.info("decomposition of %s stops at residual %s", b, remaining)
    return result


def decompose_all(engine: FiberEngine, atoms: Sequence[IntVec], bound: int, k: int, ctx: RhsContext) -> List[Decomposition]:
    """Decompose every rhs in [0, bound]^d with a nonempty fiber; returns those left with a residual."""
    failures = []
    for b in product(range(bound + 1), repeat=engine.d):
        if ctx.member(b) is None or engine.is_empty(engine.key(b, k)):
            continue
        result = decompose(engine, b, atoms, k, ctx)
        if not is_zero(result.residual):
            failures.append(result)
    return failures
