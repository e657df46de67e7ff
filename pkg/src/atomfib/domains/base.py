from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Dict, Optional, Sequence

from ..config import RhsKind
from ..errors import DimensionError
from ..intlin import IntLattice, IntMat, IntVec

if TYPE_CHECKING:
    from .sbar import SbarContext


class RhsContext(ABC):
    """Abstract base class for right-hand-side domains (lattices and monoids)."""

    kind: RhsKind

    def __init__(self, matrix: IntMat, generators: IntMat):
        """Initialize a rhs domain.

        Args:
            matrix: The matrix A whose fibers are studied
            generators: Generators m_1..m_t of the domain as columns (d rows)
        """
        if generators.d != matrix.d:
            raise DimensionError(
                f"rhs generators live in dimension {generators.d}, but the matrix has {matrix.d} rows"
            )
        self.matrix = matrix
        self.generators = generators
        self._trailing: Dict[int, IntLattice] = {}

    @abstractmethod
    def member(self, b: Sequence[int]) -> Optional[IntVec]:
        """Coefficients witnessing b in the domain, or None.

        Args:
            b: Right-hand side of length d

        Returns:
            Lattice coefficients (lattice kind) or nonnegative monoid coefficients (monoid kind)
        """
        pass

    @property
    def is_lattice(self) -> bool:
        return self.kind == "lattice"

    def trailing_span(self, level: int) -> IntLattice:
        """Integer span of A_{level+1..n}."""
        if level not in self._trailing:
            cols = [self.matrix.column(j) for j in range(level, self.matrix.n)]
            self._trailing[level] = IntLattice.from_generators(cols, self.matrix.d)
        return self._trailing[level]

    def sbar(self, level: int) -> "SbarContext":
        from .sbar import SbarContext

        return SbarContext(self, level)

    @staticmethod
    def check_rhs(b: Sequence[int], d: int) -> IntVec:
        if len(b) != d:
            raise DimensionError(f"rhs of length {len(b)} in dimension {d}")
        return tuple(int(a) for a in b)
