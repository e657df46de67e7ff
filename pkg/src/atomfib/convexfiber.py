"""Convex hulls of finite fibers and the atomic filter for P̃_b = conv(P_b).

All hull computations are exact: membership in a hull is decided by
solving rational barycentric systems over affinely independent subsets
(Carathéodory), so no tolerance is ever involved.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

import sympy as sp

from .errors import EmptyFiber, InfiniteFiber
from .fiber import FiberEngine
from .intlin import IntVec, add, sub

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticePolytope:
    """Integer polytope stored by its extreme points."""

    vertices: Tuple[IntVec, ...]
    dim: int

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def contains(self, p: Sequence[int]) -> bool:
        return in_convex_hull(p, self.vertices)


def _affine_rank(points: Sequence[IntVec]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return sp.Matrix([list(sub(p, base)) for p in points[1:]]).rank()


def in_convex_hull(p: Sequence[int], points: Sequence[IntVec]) -> bool:
    """True iff p is a convex combination of ``points``."""
    p = tuple(p)
    points = list(dict.fromkeys(tuple(q) for q in points))
    if not points:
        return False
    if p in points:
        return True
    top = _affine_rank(points) + 1
    target = sp.Matrix(list(p) + [1])
    for size in range(2, top + 1):
        for subset in combinations(points, size):
            if _affine_rank(list(subset)) != size - 1:
                continue
            system = sp.Matrix([list(q) + [1] for q in subset]).T
            try:
                solution, params = system.gauss_jordan_solve(target)
            except ValueError:
                continue
            if params.shape[0] == 0 and all(x >= 0 for x in solution):
                return True
    return False


def extreme_points(points: Iterable[Sequence[int]]) -> Tuple[IntVec, ...]:
    """Points of the set that are not convex combinations of the others."""
    pts = sorted(set(tuple(p) for p in points))
    return tuple(p for p in pts if not in_convex_hull(p, [q for q in pts if q != p]))


def vertices(engine: FiberEngine, b: Sequence[int]) -> LatticePolytope:
    """Vertices of P̃_b.

    Raises:
        InfiniteFiber: P_b is unbounded
        EmptyFiber: P_b has no points
    """
    key = engine.key(tuple(b), engine.n)
    if not engine.is_finite(key):
        raise InfiniteFiber(f"P_{tuple(b)} is infinite; unbounded hulls are not compared")
    points = engine.enumerate(key)
    if not points:
        raise EmptyFiber(f"P_{tuple(b)} is empty")
    return LatticePolytope(extreme_points(points), engine.n)


def minkowski_vertices(first: LatticePolytope, second: LatticePolytope) -> Tuple[IntVec, ...]:
    return extreme_points(add(v, w) for v in first.vertices for w in second.vertices)


def polytope_minkowski_eq(engine: FiberEngine, b: Sequence[int], g: Sequence[int]) -> bool:
    """P̃_b = P̃_g + P̃_{b-g}."""
    b, g = tuple(b), tuple(g)
    total = vertices(engine, b)
    return set(minkowski_vertices(vertices(engine, g), vertices(engine, sub(b, g)))) == set(total.vertices)


def _nonempty_finite(engine: FiberEngine, b: IntVec) -> bool:
    key = engine.key(b, engine.n)
    return engine.is_finite(key) and not engine.is_empty(key)


def convex_atomic_filter(engine: FiberEngine, rhs: Sequence[IntVec]) -> List[IntVec]:
    """Right-hand sides among atomic P_b whose hull P̃_b does not split off another one."""
    rhs = [tuple(b) for b in rhs]
    kept = []
    for b in rhs:
        split = any(
            g != b and _nonempty_finite(engine, sub(b, g)) and polytope_minkowski_eq(engine, b, g)
            for g in rhs
        )
        if not split:
            kept.append(b)
    logger.info("%d of %d atomic fibers have atomic convex hulls", len(kept), len(rhs))
    return kept
