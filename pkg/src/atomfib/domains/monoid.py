import logging
from collections import deque
from typing import Dict, Optional, Sequence, Tuple

from ..config import get_cover_budget
from ..errors import CoverTooLarge, InfeasibleError
from ..intlin import (
    DioSystem,
    IntLattice,
    IntMat,
    IntVec,
    NonNeg,
    add,
    graver_basis,
    is_zero,
    kernel_basis,
    minimal_coset_elements,
    minimal_solutions,
    zero,
)
from .base import RhsContext

logger = logging.getLogger(__name__)


class MonoidContext(RhsContext):
    """Right-hand sides ranging over the monoid generated by m_1..m_t."""

    kind = "monoid"

    def __init__(self, matrix: IntMat, generators: IntMat):
        super().__init__(matrix, generators)
        self._members: Dict[IntVec, Optional[IntVec]] = {}

    def member(self, b: Sequence[int]) -> Optional[IntVec]:
        b = self.check_rhs(b, self.matrix.d)
        if b not in self._members:
            self._members[b] = self._solve(b)
        return self._members[b]

    def _solve(self, b: IntVec) -> Optional[IntVec]:
        t = self.generators.n
        if is_zero(b):
            return zero(t)
        try:
            sols = minimal_solutions(DioSystem(self.generators, b, (NonNeg(),) * t))
        except InfeasibleError:
            return None
        return sols[0] if sols else None

    def coefficient_lattice(self, level: int) -> IntLattice:
        """{β in Z^t : Σ β_i m_i lies in the integer span of A_{level+1..n}}."""
        t = self.generators.n
        trailing = [tuple(-a for a in self.matrix.column(j)) for j in range(level, self.matrix.n)]
        block = self.generators.hstack(IntMat.from_columns(trailing, self.matrix.d))
        return IntLattice.from_generators([z[:t] for z in kernel_basis(block)], t)

    def covering_set(self, level: int, budget: Optional[int] = None) -> Tuple[IntVec, ...]:
        """Finite L ⊆ S̄^(level) with: every s in S̄^(level) has s' in L, s' ⪯_{level+1} s.

        Works on monoid coefficients: S̄^(level) is the image of the
        nonnegative part of one coefficient lattice, S̄^(level+1) of a
        sublattice. A finite cover exists iff the Hilbert basis of the first
        lies in the rational span of the sublattice; then the reachable
        quotient classes are finite and each contributes its minimal
        nonnegative points.

        Raises:
            CoverTooLarge: no finite cover exists or it exceeds the budget
        """
        budget = get_cover_budget(budget)
        t = self.generators.n
        coarse = self.coefficient_lattice(level)
        fine = self.coefficient_lattice(level + 1)
        hilbert = [h for h in graver_basis(coarse.basis, t) if all(a >= 0 for a in h)]
        for h in hilbert:
            if not fine.spans_rationally(h):
                raise CoverTooLarge(
                    f"S̄^({level}) is not covered by finitely many classes of S̄^({level + 1}): "
                    f"generator {self.generators.mul_vec(h)} has no multiple in S̄^({level + 1})"
                )
        classes = {fine.reduce(zero(t))}
        queue = deque(classes)
        while queue:
            c = queue.popleft()
            for h in hilbert:
                r = fine.reduce(add(c, h))
                if r not in classes:
                    classes.add(r)
                    queue.append(r)
                    if len(classes) > budget:
                        raise CoverTooLarge(f"more than {budget} quotient classes at level {level}")
        fine_graver = graver_basis(fine.basis, t)
        cover = set()
        for c in sorted(classes):
            for beta in minimal_coset_elements(c, fine_graver):
                if all(a >= 0 for a in beta):
                    cover.add(self.generators.mul_vec(beta))
            if len(cover) > budget:
                raise CoverTooLarge(f"covering set at level {level} exceeds {budget} elements")
        logger.debug("covering set at level %d: %d classes, %d elements", level, len(classes), len(cover))
        return tuple(sorted(cover))

    def hilbert_generators(self, level: int) -> Tuple[IntVec, ...]:
        """Images of the Hilbert basis of S̄^(level), i.e. its minimal monoid generators."""
        t = self.generators.n
        coarse = self.coefficient_lattice(level)
        images = {
            self.generators.mul_vec(h)
            for h in graver_basis(coarse.basis, t)
            if all(a >= 0 for a in h)
        }
        images.discard(zero(self.matrix.d))
        return tuple(sorted(images))
