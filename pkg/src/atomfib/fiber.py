"""Partially extended fibers Q_b^(k) = {z : Az = b, z_1..z_k >= 0, z_{k+1}..z_n free}.

``FiberEngine`` fixes the matrix and memoizes every minimal-element
computation; all other modules query fibers through it.

Minimal sets are computed in projected space: π_l(Q_b) is a coset of the
projected kernel lattice, its ⊑_l-minimal elements come from
``intlin.minimal_coset_elements``, and sign constraints on the first k
coordinates only select among them because ⊑-down-closed regions keep
their minimal elements.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .errors import DimensionError, EmptyFiber, InfiniteFiber
from .intlin import IntLattice, IntMat, IntVec, ProjectedSolver, l1_norm, sq_leq

logger = logging.getLogger(__name__)

__all__ = ["FiberKey", "MinRepSet", "FiberEngine", "sq_leq"]


@dataclass(frozen=True)
class FiberKey:
    """Identifies Q_b^(k); k = 0 is the extended fiber, k = n the fiber P_b."""

    matrix: IntMat
    b: IntVec
    k: int

    def __post_init__(self):
        if len(self.b) != self.matrix.d:
            raise DimensionError(f"rhs of length {len(self.b)} for a matrix with {self.matrix.d} rows")
        if not 0 <= self.k <= self.matrix.n:
            raise ValueError(f"order {self.k} outside 0..{self.matrix.n}")


@dataclass(frozen=True)
class MinRepSet:
    """Representatives of the ⊑_l-minimal classes of Q_b^(k)."""

    key: FiberKey
    level: int
    reps: Tuple[IntVec, ...]

    @property
    def projections(self) -> Tuple[IntVec, ...]:
        return tuple(r[: self.level] for r in self.reps)

    def __len__(self) -> int:
        return len(self.reps)

    def __iter__(self):
        return iter(self.reps)


@dataclass
class EngineStats:
    minimal_sets: int = 0
    cache_hits: int = 0


class FiberEngine:
    """Fiber queries for one matrix, memoized.

    Cache writes are serialized behind a lock; cached tuples are immutable.
    """

    def __init__(self, matrix: IntMat):
        self.matrix = matrix
        self.stats = EngineStats()
        self._lock = threading.RLock()
        self._solvers: Dict[int, ProjectedSolver] = {}
        self._minimal: Dict[Tuple[IntVec, int], Optional[Tuple[IntVec, ...]]] = {}
        self._reps: Dict[Tuple[IntVec, int, int], MinRepSet] = {}
        self._trailing: Dict[int, IntLattice] = {}
        self._finite: Dict[int, bool] = {}

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def d(self) -> int:
        return self.matrix.d

    def key(self, b: Sequence[int], k: int) -> FiberKey:
        return FiberKey(self.matrix, tuple(b), k)

    def solver(self, level: int) -> ProjectedSolver:
        with self._lock:
            if level not in self._solvers:
                self._solvers[level] = ProjectedSolver(self.matrix, range(level))
            return self._solvers[level]

    def trailing_lattice(self, level: int) -> IntLattice:
        """Integer span of the columns after the first ``level`` ones."""
        with self._lock:
            if level not in self._trailing:
                cols = [self.matrix.column(j) for j in range(level, self.n)]
                self._trailing[level] = IntLattice.from_generators(cols, self.d)
            return self._trailing[level]

    def projected_minimal(self, b: IntVec, level: int) -> Optional[Tuple[IntVec, ...]]:
        """⊑_l-minimal elements of π_l(Q_b) over all orthants; None if Q_b is empty."""
        cache_key = (b, level)
        with self._lock:
            if cache_key in self._minimal:
                self.stats.cache_hits += 1
                return self._minimal[cache_key]
        result = self.solver(level).minimal_points(b)
        with self._lock:
            self._minimal[cache_key] = result
            self.stats.minimal_sets += 1
        return result

    def region(self, b: IntVec, k: int, level: int) -> Tuple[IntVec, ...]:
        """Projected minimal elements of π_l(Q_b^(k)), i.e. those with nonnegative first k entries."""
        points = self.projected_minimal(b, level)
        if points is None:
            return ()
        return tuple(x for x in points if all(a >= 0 for a in x[:k]))

    def is_empty(self, key: FiberKey) -> bool:
        if key.k == 0:
            return self.projected_minimal(key.b, 0) is None
        return not self.region(key.b, key.k, key.k)

    def min_reps(self, key: FiberKey, level: int) -> MinRepSet:
        """R_{b,l}^(k): one representative per ⊑_l-minimal class, canonical free parts.

        Raises:
            EmptyFiber: Q_b^(k) has no points
        """
        if not key.k <= level <= self.n:
            raise ValueError(f"level {level} must satisfy {key.k} <= level <= {self.n}")
        cache_key = (key.b, key.k, level)
        with self._lock:
            if cache_key in self._reps:
                return self._reps[cache_key]
        points = self.region(key.b, key.k, level)
        if not points:
            raise EmptyFiber(f"Q_{key.b}^({key.k}) is empty")
        solver = self.solver(level)
        reps = MinRepSet(key, level, tuple(solver.lift(x, key.b) for x in points))
        with self._lock:
            self._reps[cache_key] = reps
        return reps

    def weight(self, key: FiberKey, m: int) -> int:
        """ω_m(Q_b^(k)) = min ||π_m(v)||_1 over the fiber, m <= k.

        Every element dominates a ⊑_k-minimal one, so the minimum over the
        level-k minimal set is the minimum over the fiber.
        """
        if not 0 <= m <= key.k:
            raise ValueError(f"weight level {m} must lie in 0..{key.k}")
        points = self.region(key.b, key.k, key.k)
        if not points:
            raise EmptyFiber(f"Q_{key.b}^({key.k}) is empty")
        return min(l1_norm(x[:m]) for x in points)

    def is_finite(self, key: FiberKey) -> bool:
        """|Q_b^(k)| is finite iff no nonzero kernel element has nonnegative first k entries."""
        with self._lock:
            if key.k in self._finite:
                return self._finite[key.k]
        graver = self.solver(self.n).graver
        finite = not any(all(a >= 0 for a in g[: key.k]) for g in graver)
        with self._lock:
            self._finite[key.k] = finite
        return finite

    def enumerate(self, key: FiberKey) -> Tuple[IntVec, ...]:
        """Every point of a finite fiber.

        With no nonzero kernel element in the orthant, each point is itself
        minimal, so the level-n minimal set is the whole fiber.

        Raises:
            InfiniteFiber: the fiber is unbounded
        """
        if not self.is_finite(key):
            raise InfiniteFiber(f"Q_{key.b}^({key.k}) is infinite")
        if self.is_empty(key):
            return ()
        return self.min_reps(key, self.n).reps

    def in_trailing_span(self, b: IntVec, level: int) -> bool:
        return b in self.trailing_lattice(level)

    def covers(self, reps: MinRepSet, z: IntVec) -> bool:
        """True iff some representative is ⊑_l below z."""
        return any(sq_leq(r, z, reps.level) for r in reps.reps)


def describe(engine: FiberEngine, b: IntVec, k: int) -> dict:
    """Listing of one fiber in the JSON layout {rhs, order, elements|min_reps, finite}."""
    key = engine.key(b, k)
    out = {"rhs": list(b), "order": k, "finite": engine.is_finite(key)}
    if out["finite"]:
        out["elements"] = [list(z) for z in engine.enumerate(key)]
    else:
        out["min_reps"] = [list(z) for z in engine.min_reps(key, engine.n).reps]
    return out
