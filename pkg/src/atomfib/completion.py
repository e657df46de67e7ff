"""Extended and partially extended atomic fibers by completion over a lattice.

``extended_atomic_fibers`` closes a symmetric generating set of the rhs
lattice under sums, keeping only sums whose extended fiber does not split
off a known one; ``restrict_to_order`` then drops every rhs whose order-k
fiber is empty or decomposes.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .config import get_budget
from .domains import LatticeContext, RhsContext
from .errors import BudgetExceeded
from .fiber import FiberEngine, describe
from .intlin import IntLattice, IntMat, IntVec, add, is_zero, kernel_basis, neg, sub, zero
from .minkowski import restricted_sum_eq

logger = logging.getLogger(__name__)


def rhs_sort_key(b: IntVec) -> Tuple[int, IntVec]:
    return (sum(b), b)


@dataclass
class AtomicFiberSet:
    """Right-hand sides of atomic fibers of one order, with where they came from.

    ``rhs`` holds the nonzero right-hand sides sorted by (sum, lex). The
    neutral rhs 0 counts as atomic exactly when Q_0 is infinite, which is
    the case for extended fibers of a matrix with nontrivial kernel.
    """

    matrix: IntMat
    context: RhsContext
    order: int
    rhs: Tuple[IntVec, ...]
    provenance: str
    engine: FiberEngine = field(repr=False, compare=False)
    stats: Dict[str, int] = field(default_factory=dict, compare=False)

    @property
    def neutral(self) -> bool:
        return not self.engine.is_finite(self.engine.key(zero(self.matrix.d), self.order))

    @property
    def count(self) -> int:
        return len(self.rhs) + int(self.neutral)

    def __iter__(self) -> Iterator[IntVec]:
        return iter(self.rhs)

    def __contains__(self, b: Sequence[int]) -> bool:
        return tuple(b) in self.rhs

    def listing(self, b: Sequence[int]) -> dict:
        return describe(self.engine, tuple(b), self.order)

    def to_dict(self, with_fibers: bool = True) -> dict:
        out = {
            "matrix": [list(r) for r in self.matrix.rows],
            "order": self.order,
            "provenance": self.provenance,
            "rhs_domain": self.context.kind,
            "count": self.count,
            "neutral": self.neutral,
            "rhs": [list(b) for b in self.rhs],
        }
        if with_fibers:
            out["fibers"] = [self.listing(b) for b in self.rhs]
        return out


def default_generators(matrix: IntMat, context: Optional[RhsContext] = None) -> List[IntVec]:
    """Symmetric generators of Λ ∩ A·Z^n: ±A_i when every column lies in Λ."""
    columns = [c for c in matrix.columns() if not is_zero(c)]
    if context is None or all(context.member(c) is not None for c in columns):
        gens = columns
    else:
        # intersection via the kernel of [L | -A]
        t = context.generators.n
        block = context.generators.hstack(IntMat.from_columns([neg(c) for c in matrix.columns()], matrix.d))
        images = [context.generators.mul_vec(z[:t]) for z in kernel_basis(block)]
        gens = list(IntLattice.from_generators(images, matrix.d).basis)
    out: List[IntVec] = []
    for g in gens:
        for v in (g, neg(g)):
            if v not in out:
                out.append(v)
    return out


def _splits(engine: FiberEngine, s: IntVec, g: IntVec, k: int) -> bool:
    rest = sub(s, g)
    if engine.is_empty(engine.key(rest, k)) or engine.is_empty(engine.key(g, k)):
        return False
    return restricted_sum_eq(engine, g, rest, k, engine.n)


def normal_form(engine: FiberEngine, s: Sequence[int], reducers: Sequence[IntVec]) -> IntVec:
    """Subtract g from s while Q_s = Q_g ⊕ Q_{s-g}.

    Reducers are scanned in the given order and the scan restarts after
    each reduction.
    """
    s = tuple(s)
    changed = True
    while changed and not is_zero(s):
        changed = False
        for g in reducers:
            if is_zero(g):
                continue
            if _splits(engine, s, g, 0):
                s = sub(s, g)
                changed = True
                break
    return s


def _require_lattice(context: RhsContext) -> None:
    if not context.is_lattice:
        raise ValueError("the completion path only handles lattice rhs domains; use project-and-lift for monoids")


def extended_atomic_fibers(
    engine: FiberEngine,
    context: Optional[RhsContext] = None,
    generators: Optional[Sequence[Sequence[int]]] = None,
    budget: Optional[int] = None,
) -> AtomicFiberSet:
    """Completion for extended fibers.

    Args:
        engine: Fiber engine of the matrix A
        context: Lattice of right-hand sides, defaults to the column lattice of A
        generators: Symmetric generating set F of Λ ∩ A·Z^n, defaults to ``default_generators``
        budget: Cap on processed sums (argument, then ATOMFIB_BUDGET, then unbounded)

    Returns:
        Order-0 set whose right-hand sides include every extended atomic fiber

    Raises:
        BudgetExceeded: more than ``budget`` sums were processed
    """
    context = context or LatticeContext.column_lattice(engine.matrix)
    _require_lattice(context)
    budget = get_budget(budget)
    if generators is None:
        generators = default_generators(engine.matrix, context)
    basis: List[IntVec] = [zero(engine.d)]
    for f in generators:
        f = tuple(f)
        if not is_zero(f) and f not in basis:
            basis.append(f)
    queue = deque(add(f, g) for i, f in enumerate(basis) for g in basis[: i + 1])
    processed = set()
    while queue:
        s = queue.popleft()
        if s in processed:
            continue
        processed.add(s)
        if budget is not None and len(processed) > budget:
            raise BudgetExceeded(f"extended completion processed more than {budget} sums")
        f = normal_form(engine, s, basis)
        if not is_zero(f) and f not in basis:
            basis.append(f)
            queue.extend(add(f, g) for g in basis)
            logger.debug("new extended rhs %s (basis %d, pending %d)", f, len(basis), len(queue))
    rhs = tuple(sorted((b for b in basis if not is_zero(b)), key=rhs_sort_key))
    logger.info("extended completion: %d rhs from %d processed sums", len(rhs), len(processed))
    return AtomicFiberSet(
        engine.matrix, context, 0, rhs, "completion", engine, {"candidates": len(processed)}
    )


def restrict_to_order(fibers: AtomicFiberSet, k: int) -> AtomicFiberSet:
    """Keep b with Q_b^(k) nonempty that no other g splits at order k."""
    if fibers.order != 0:
        raise ValueError(f"restriction starts from extended fibers, got order {fibers.order}")
    engine = fibers.engine
    if not 0 <= k <= engine.n:
        raise ValueError(f"order {k} outside 0..{engine.n}")
    candidates = [b for b in fibers.rhs if not engine.is_empty(engine.key(b, k))]
    kept = tuple(
        b for b in candidates if not any(g != b and _splits(engine, b, g, k) for g in candidates)
    )
    logger.info("order %d: %d of %d rhs are atomic", k, len(kept), len(fibers.rhs))
    return AtomicFiberSet(
        fibers.matrix, fibers.context, k, kept, "completion+restrict", engine, dict(fibers.stats)
    )


def partially_extended_atomic_fibers(
    engine: FiberEngine, k: int, context: Optional[RhsContext] = None, budget: Optional[int] = None
) -> AtomicFiberSet:
    return restrict_to_order(extended_atomic_fibers(engine, context, budget=budget), k)
