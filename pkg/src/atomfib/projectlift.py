"""Project-and-lift computation of atomic fibers.

Step k lifts atomic fibers of order k-1 to order k in three phases:

    refine      F_{k-1} -> F̃_{k-1}  (⪯_k-incomparable covering set)
    completion  F̃_{k-1} -> G_{k-1}  (weight-stratified completion, order k-1, ⊕^(k))
    intersect   G_{k-1} -> F_k      (drop empty and splitting order-k fibers)

starting from F_0 = {0}. F_n holds the atomic fibers. The rhs 0 is carried
as the neutral element through every phase and never reported.
"""

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .completion import AtomicFiberSet, rhs_sort_key
from .config import MonoidRefinement, get_budget, get_monoid_refinement
from .domains import LatticeContext, RhsContext, SbarContext, refine_cover
from .errors import BudgetExceeded
from .fiber import FiberEngine
from .intlin import IntMat, IntVec, add, is_zero, min_coeff_in_coset, neg, scale, sub, zero
from .minkowski import restricted_sum_eq

logger = logging.getLogger(__name__)

Phase = str

PHASES: Tuple[Phase, ...] = ("refine", "completion", "intersect")


@dataclass
class LiftState:
    """Snapshot of one phase of one lifting step."""

    step: int
    phase: Phase
    rhs: Tuple[IntVec, ...]
    candidates: int = 0
    reductions: int = 0

    @property
    def size(self) -> int:
        return len(self.rhs)


@dataclass
class WeightStrata:
    """Completion basis split by ω_{k-1}: zero-weight and positive-weight right-hand sides."""

    zero: List[IntVec] = field(default_factory=list)
    positive: List[IntVec] = field(default_factory=list)

    def all(self) -> List[IntVec]:
        return self.zero + self.positive


def comparable_pairs(rhs: Sequence[IntVec], sctx: SbarContext) -> List[Tuple[IntVec, IntVec]]:
    """Pairs (b_i, b_j), b_i != b_j, with b_i ⪯_l b_j. Empty for a valid phase output."""
    return [(u, v) for u in rhs for v in rhs if u != v and sctx.preceq(u, v)]


class ProjectAndLift:
    """Atomic fibers of A with right-hand sides in a lattice or monoid.

    Args:
        engine: Fiber engine of the matrix A
        context: Rhs domain, defaults to the lattice spanned by the columns of A
        budget: Cap on processed candidates per lifting step
        cover_budget: Cap forwarded to the monoid covering-set construction
        refinement: Monoid preorder refinement, "cover" (exact covering set) or
            "hilbert" (shift set of Hilbert-basis generators of S̄^(k))
    """

    def __init__(
        self,
        engine: FiberEngine,
        context: Optional[RhsContext] = None,
        budget: Optional[int] = None,
        cover_budget: Optional[int] = None,
        refinement: Optional[MonoidRefinement] = None,
    ):
        self.engine = engine
        self.context = context or LatticeContext.column_lattice(engine.matrix)
        self.budget = get_budget(budget)
        self.cover_budget = cover_budget
        self.refinement = get_monoid_refinement(refinement)
        self.history: List[LiftState] = []
        self._members: Dict[Tuple[IntVec, int], bool] = {}
        self._sbar: Dict[int, SbarContext] = {}
        self._candidates = 0
        self._reductions = 0

    @property
    def n(self) -> int:
        return self.engine.n

    # -- oracles ----------------------------------------------------------------

    def sbar(self, level: int) -> SbarContext:
        if level not in self._sbar:
            self._sbar[level] = self.context.sbar(level)
        return self._sbar[level]

    def in_monoid(self, b: IntVec, order: int) -> bool:
        """b ∈ M^(order): b in the rhs domain with Q_b^(order) nonempty."""
        key = (b, order)
        if key not in self._members:
            inside = self.context.is_lattice or self.context.member(b) is not None
            self._members[key] = inside and not self.engine.is_empty(self.engine.key(b, order))
        return self._members[key]

    def trivial(self, b: IntVec, k: int) -> bool:
        """b ∈ S̄^(k), i.e. π_k(Q_b^(k-1)) = π_k(Q_0^(k-1))."""
        return self.sbar(k).contains(b)

    def weight(self, b: IntVec, order: int) -> int:
        return self.engine.weight(self.engine.key(b, order), order)

    def _reduces(self, s: IntVec, g: IntVec, order: int, level: int) -> bool:
        """Q_s^(order) = Q_g^(order) ⊕^(level) Q_{s-g}^(order) with s - g ∈ M^(order)."""
        rest = sub(s, g)
        if not self.in_monoid(rest, order):
            return False
        self._reductions += 1
        return restricted_sum_eq(self.engine, g, rest, order, level)

    def _reducers(self, G: Sequence[IntVec], k: int) -> List[IntVec]:
        return [g for g in G if not is_zero(g) and not self.trivial(g, k)]

    def _tick(self) -> None:
        self._candidates += 1
        if self.budget is not None and self._candidates > self.budget:
            raise BudgetExceeded(f"lifting step processed more than {self.budget} candidates")

    # -- completion -------------------------------------------------------------

    def monoid_normal_form(self, s: IntVec, zero_stratum: Sequence[IntVec], positive: Sequence[IntVec], k: int) -> IntVec:
        """Normal form of s at step k.

        Returns 0 as soon as a positive-weight reducer applies; otherwise
        reduces by the zero-weight stratum until nothing applies.
        """
        if is_zero(s):
            return s
        for g in self._reducers(positive, k):
            if self._reduces(s, g, k - 1, k):
                return zero(len(s))
        reducers = self._reducers(zero_stratum, k)
        changed = True
        while changed and not is_zero(s):
            changed = False
            for g in reducers:
                if self._reduces(s, g, k - 1, k):
                    s = sub(s, g)
                    changed = True
                    break
        return s

    def _zero_closure(self, start: Sequence[IntVec], k: int) -> List[IntVec]:
        closure = list(start)
        queue = deque(add(f, g) for i, f in enumerate(closure) for g in closure[: i + 1])
        seen = set()
        while queue:
            s = queue.popleft()
            if s in seen:
                continue
            seen.add(s)
            self._tick()
            f = self.monoid_normal_form(s, closure, (), k)
            if not self.trivial(f, k) and f not in closure:
                closure.append(f)
                queue.extend(add(f, g) for g in closure)
        return closure

    def _zero_filter(self, closure: Sequence[IntVec], k: int) -> List[IntVec]:
        reducers = self._reducers(closure, k)
        kept = []
        for b in closure:
            if is_zero(b) or not any(g != b and self._reduces(b, g, k - 1, k) for g in reducers):
                kept.append(b)
        return kept

    def lift_completion(self, seeds: Sequence[IntVec], k: int) -> Tuple[IntVec, ...]:
        """Weight-stratified completion at step k: F̃_{k-1} -> G_{k-1}.

        The zero-weight stratum is closed and filtered first; positive
        weight candidates are then processed in order of increasing
        ω_{k-1}, ties broken lexicographically.
        """
        order = k - 1
        strata = WeightStrata()
        for f in seeds:
            (strata.zero if self.weight(f, order) == 0 else strata.positive).append(f)
        if zero(self.engine.d) not in strata.zero:
            strata.zero.insert(0, zero(self.engine.d))

        zero_stratum = self._zero_filter(self._zero_closure(strata.zero, k), k)

        positive: List[IntVec] = []
        for g in strata.positive:
            f = self.monoid_normal_form(g, zero_stratum, (), k)
            if not is_zero(f) and not self.trivial(f, k) and f not in positive:
                positive.append(f)

        heap: List[Tuple[int, IntVec]] = []
        pushed = set()

        def push(f: IntVec, partners: Sequence[IntVec]) -> None:
            for g in partners:
                s = add(f, g)
                if s not in pushed:
                    pushed.add(s)
                    heapq.heappush(heap, (self.weight(s, order), s))

        for i, f in enumerate(positive):
            push(f, zero_stratum + positive[: i + 1])
        while heap:
            _, s = heapq.heappop(heap)
            self._tick()
            f = self.monoid_normal_form(s, zero_stratum, positive, k)
            if not is_zero(f) and not self.trivial(f, k) and f not in positive and f not in zero_stratum:
                positive.append(f)
                push(f, zero_stratum + positive)
                logger.debug("step %d: positive-weight rhs %s (weight %d)", k, f, self.weight(f, order))
        return tuple(zero_stratum + positive)

    # -- intersect and refine -----------------------------------------------------

    def intersect_reduce(self, G: Sequence[IntVec], k: int) -> Tuple[IntVec, ...]:
        """G_{k-1} -> F_k: keep b ∈ M^(k) that no other g splits at order k."""
        candidates = [b for b in G if self.in_monoid(b, k)]
        reducers = self._reducers(candidates, k)
        kept = [b for b in candidates if is_zero(b) or not any(g != b and self._reduces(b, g, k, k) for g in reducers)]
        return tuple(kept)

    def refine_lattice(self, F: Sequence[IntVec], k: int) -> Tuple[IntVec, ...]:
        """F_k -> F̄_k: add the smallest multiple of A_{k+1} reachable inside Λ modulo later columns."""
        found = min_coeff_in_coset(self.engine.matrix, k + 1, self.context.generators)
        if found is None:
            return tuple(F)
        _, s = found
        if self.sbar(k + 1).contains(s):
            # A_{k+1} adds nothing modulo the later columns
            return tuple(F)
        out = list(F)
        if s not in out:
            out.append(s)
        if not self.sbar(k + 1).contains(scale(-2, s)) and neg(s) not in out:
            out.append(neg(s))
        return tuple(out)

    def _minimal_shifts(self, shifted: Sequence[IntVec], k: int) -> Tuple[IntVec, ...]:
        """Sequential filter keeping the ⪯_{k+1}-minimal elements, in rhs order."""
        ordered = sorted(set(shifted), key=rhs_sort_key)
        finer = self.sbar(k + 1)
        remaining = list(ordered)
        for b in ordered:
            if any(other != b and finer.preceq(other, b) for other in remaining):
                remaining.remove(b)
        return tuple(remaining)

    def refine_monoid(self, F: Sequence[IntVec], k: int) -> Tuple[IntVec, ...]:
        """F_k -> F̃_k: shift by a covering set of S̄^(k), keep ⪯_{k+1}-minimal shifts."""
        cover = refine_cover(self.sbar(k), self.cover_budget)
        return self._minimal_shifts([add(b, s) for b in F for s in cover], k)

    def refine_monoid_hilbert(self, F: Sequence[IntVec], k: int) -> Tuple[IntVec, ...]:
        """F_k -> F̃_k: add the generators of S̄^(k) not already in S̄^(k+1), keep ⪯_{k+1}-minimal ones.

        Works when no finite covering set exists; the completion closes
        the enlarged seed set under sums.
        """
        finer = self.sbar(k + 1)
        gens = [h for h in self.context.hilbert_generators(k) if not finer.contains(h)]
        return self._minimal_shifts(list(F) + gens, k)

    def refine(self, F: Sequence[IntVec], k: int) -> Tuple[IntVec, ...]:
        if self.context.is_lattice:
            return self.refine_lattice(F, k)
        if self.refinement == "hilbert":
            return self.refine_monoid_hilbert(F, k)
        return self.refine_monoid(F, k)

    # -- driver -------------------------------------------------------------------

    def _record(self, step: int, phase: Phase, rhs: Sequence[IntVec]) -> None:
        state = LiftState(step, phase, tuple(rhs), self._candidates, self._reductions)
        self.history.append(state)
        logger.info(
            "step %d %s: %d rhs (%d candidates, %d reduction tests)",
            step, phase, state.size, state.candidates, state.reductions,
        )

    def step(self, F: Sequence[IntVec], k: int) -> Tuple[IntVec, ...]:
        """One lifting step: F_{k-1} -> F_k."""
        self._candidates = 0
        self._reductions = 0
        seeds = self.refine(F, k - 1)
        self._record(k, "refine", seeds)
        G = self.lift_completion(seeds, k)
        self._record(k, "completion", G)
        F = self.intersect_reduce(G, k)
        self._record(k, "intersect", F)
        return F

    def run(self) -> AtomicFiberSet:
        self.history = []
        F: Tuple[IntVec, ...] = (zero(self.engine.d),)
        for k in range(1, self.n + 1):
            F = self.step(F, k)
        rhs = tuple(sorted((b for b in F if not is_zero(b)), key=rhs_sort_key))
        stats = {
            "candidates": sum(s.candidates for s in self.history if s.phase == "intersect"),
            "steps": self.n,
        }
        return AtomicFiberSet(self.engine.matrix, self.context, self.n, rhs, "project-and-lift", self.engine, stats)

    def trace_rows(self) -> List[dict]:
        """One row per lifting step: sizes of F̃_{k-1}, G_{k-1}, F_k and work counters."""
        rows = []
        by_step: Dict[int, Dict[Phase, LiftState]] = {}
        for state in self.history:
            by_step.setdefault(state.step, {})[state.phase] = state
        for k in sorted(by_step):
            phases = by_step[k]
            last = phases["intersect"]
            rows.append(
                {
                    "step": k,
                    "refined": phases["refine"].size,
                    "completed": phases["completion"].size,
                    "atomic": last.size,
                    "candidates": last.candidates,
                    "reductions": last.reductions,
                }
            )
        return rows


def run(
    matrix: IntMat,
    context: Optional[RhsContext] = None,
    budget: Optional[int] = None,
    refinement: Optional[MonoidRefinement] = None,
) -> AtomicFiberSet:
    """Atomic fibers of ``matrix`` w.r.t. ``context`` (default: its column lattice)."""
    return ProjectAndLift(FiberEngine(matrix), context, budget, refinement=refinement).run()
