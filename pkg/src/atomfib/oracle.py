"""Brute-force atomic fibers of a nonnegative matrix, straight from the definitions.

Every fiber in the rhs box is enumerated point by point and every split
b = b1 + b2 is tested by checking that each point of P_b dominates a
point of P_{b1}. Only meant as ground truth for small instances.
"""

import logging
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .completion import rhs_sort_key
from .config import get_oracle_box
from .errors import InfiniteFiber
from .intlin import IntMat, IntVec, is_zero, sq_leq, sub

logger = logging.getLogger(__name__)


class BruteForceFibers:
    """Enumerated fibers P_b of a nonnegative matrix without zero columns."""

    def __init__(self, matrix: IntMat):
        if not matrix.is_nonnegative():
            raise ValueError("the brute-force oracle needs a nonnegative matrix")
        for j, col in enumerate(matrix.columns(), start=1):
            if is_zero(col):
                raise InfiniteFiber(f"column {j} is zero, so every nonempty fiber is infinite")
        self.matrix = matrix
        self._fibers: Dict[IntVec, Tuple[IntVec, ...]] = {}

    def fiber(self, b: Sequence[int]) -> Tuple[IntVec, ...]:
        b = tuple(b)
        if b not in self._fibers:
            self._fibers[b] = tuple(sorted(self._enumerate(b)))
        return self._fibers[b]

    def _enumerate(self, b: IntVec) -> List[IntVec]:
        if any(a < 0 for a in b):
            return []
        A = self.matrix
        bounds = [min(b[i] // A.rows[i][j] for i in range(A.d) if A.rows[i][j] > 0) for j in range(A.n)]
        out: List[IntVec] = []

        def extend(j: int, prefix: List[int], rest: List[int]) -> None:
            if j == A.n:
                if not any(rest):
                    out.append(tuple(prefix))
                return
            col = A.column(j)
            for x in range(bounds[j] + 1):
                left = [r - x * c for r, c in zip(rest, col)]
                if any(r < 0 for r in left):
                    break
                extend(j + 1, prefix + [x], left)

        extend(0, [], list(b))
        return out

    def splits(self, b: Sequence[int], b1: Sequence[int]) -> bool:
        """P_b = P_{b1} ⊕ P_{b-b1}, both summands nonempty."""
        b, b1 = tuple(b), tuple(b1)
        lower, upper = self.fiber(b1), self.fiber(sub(b, b1))
        if not lower or not upper:
            return False
        return all(any(sq_leq(v, u) for v in lower) for u in self.fiber(b))


def oracle_atomic(matrix: IntMat, box: Optional[int] = None) -> List[IntVec]:
    """Right-hand sides b in [0, box]^d whose fiber P_b is nonempty and atomic.

    Raises:
        InfiniteFiber: A has a zero column
        ValueError: A has a negative entry
    """
    box = get_oracle_box(box)
    fibers = BruteForceFibers(matrix)
    grid = [b for b in product(range(box + 1), repeat=matrix.d) if not is_zero(b) and fibers.fiber(b)]
    atomic = []
    for b in grid:
        parts = (b1 for b1 in grid if b1 != b and all(x <= y for x, y in zip(b1, b)))
        if not any(fibers.splits(b, b1) for b1 in parts):
            atomic.append(b)
    logger.info("oracle: %d atomic fibers among %d nonempty fibers in the box", len(atomic), len(grid))
    return sorted(atomic, key=rhs_sort_key)
