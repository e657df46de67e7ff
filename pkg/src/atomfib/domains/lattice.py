from typing import Optional, Sequence

from ..intlin import HermiteSolver, IntLattice, IntMat, IntVec
from .base import RhsContext


class LatticeContext(RhsContext):
    """Right-hand sides ranging over a lattice Λ given by a basis.

    Membership is an integer solve, ⪯_l is symmetric here, and every
    difference of two members is again a member.
    """

    kind = "lattice"

    def __init__(self, matrix: IntMat, generators: IntMat):
        super().__init__(matrix, generators)
        self._solver = HermiteSolver(generators)

    @classmethod
    def column_lattice(cls, matrix: IntMat) -> "LatticeContext":
        """The default domain: the lattice spanned by the columns of A."""
        basis = IntLattice.from_generators(matrix.columns(), matrix.d).basis
        return cls(matrix, IntMat.from_columns(basis, matrix.d))

    def member(self, b: Sequence[int]) -> Optional[IntVec]:
        return self._solver.solve(self.check_rhs(b, self.matrix.d))
