"""Exact integer linear algebra.

Hermite normal forms, lattice membership, Graver bases and the
minimal-element solver for sign-constrained linear diophantine systems.
Everything works on Python ints, so no intermediate value ever overflows.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy.core.intfunc import igcdex

from .errors import DimensionError, InfeasibleError

logger = logging.getLogger(__name__)

IntVec = Tuple[int, ...]


def zero(dim: int) -> IntVec:
    return (0,) * dim


def add(u: IntVec, v: IntVec) -> IntVec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: IntVec, v: IntVec) -> IntVec:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: IntVec) -> IntVec:
    return tuple(-a for a in u)


def scale(c: int, u: IntVec) -> IntVec:
    return tuple(c * a for a in u)


def is_zero(u: IntVec) -> bool:
    return not any(u)


def l1_norm(u: Iterable[int]) -> int:
    return sum(abs(a) for a in u)


def sq_leq(u: IntVec, v: IntVec, level: Optional[int] = None) -> bool:
    """Sign-compatible domination u ⊑_l v on the first ``level`` coordinates.

    True iff u_i v_i >= 0 and |u_i| <= |v_i| for all i < level.
    ``level=None`` compares every coordinate.
    """
    if level is None:
        level = len(u)
    for i in range(level):
        a, b = u[i], v[i]
        if a == 0:
            continue
        if (a > 0) != (b > 0) or b == 0 or abs(a) > abs(b):
            return False
    return True


def sign_compatible(u: IntVec, v: IntVec) -> bool:
    """True iff u and v lie in a common closed orthant."""
    return all(a * b >= 0 for a, b in zip(u, v))


@dataclass(frozen=True)
class IntMat:
    """Integer matrix with d rows and n columns, stored row-major."""

    rows: Tuple[IntVec, ...]
    ncols: int

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != self.ncols:
                raise DimensionError(f"row {i} has {len(row)} entries, expected {self.ncols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMat":
        rows = tuple(tuple(int(a) for a in row) for row in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer the column count of a matrix without rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMat":
        columns = [tuple(int(a) for a in c) for c in columns]
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise DimensionError(f"column {j} has {len(col)} entries, expected {nrows}")
        rows = tuple(tuple(col[i] for col in columns) for i in range(nrows))
        return cls(rows, len(columns))

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.ncols

    def column(self, j: int) -> IntVec:
        """Column j, 0-based (the column written A_{j+1} in 1-based notation)."""
        return tuple(row[j] for row in self.rows)

    def columns(self) -> Tuple[IntVec, ...]:
        return tuple(self.column(j) for j in range(self.n))

    def select_columns(self, indices: Sequence[int]) -> "IntMat":
        return IntMat(tuple(tuple(row[j] for j in indices) for row in self.rows), len(indices))

    def hstack(self, other: "IntMat") -> "IntMat":
        if other.d != self.d:
            raise DimensionError(f"cannot stack {self.d}-row and {other.d}-row matrices")
        return IntMat(tuple(a + b for a, b in zip(self.rows, other.rows)), self.n + other.n)

    def mul_vec(self, x: Sequence[int]) -> IntVec:
        if len(x) != self.n:
            raise DimensionError(f"vector of length {len(x)} does not fit {self.d}x{self.n} matrix")
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.rows)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for row in self.rows for a in row)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(a) for a in row) for row in self.rows)


# -- variable constraints -------------------------------------------------------


@dataclass(frozen=True)
class NonNeg:
    constrained = True

    def admits(self, x: int) -> bool:
        return x >= 0


@dataclass(frozen=True)
class Free:
    constrained = False

    def admits(self, x: int) -> bool:
        return True


@dataclass(frozen=True)
class SignBoundedBy:
    """Same sign as ``value`` and magnitude at most |value|; value 0 fixes the variable to 0."""

    value: int
    constrained = True

    def admits(self, x: int) -> bool:
        return x * self.value >= 0 and abs(x) <= abs(self.value)


@dataclass(frozen=True)
class FixedSignFree:
    """Fixed sign, unbounded magnitude."""

    sign: int
    constrained = True

    def admits(self, x: int) -> bool:
        return x * self.sign >= 0


VarSpec = Union[NonNeg, Free, SignBoundedBy, FixedSignFree]


@dataclass(frozen=True)
class DioSystem:
    """Linear diophantine system A z = b with one constraint per variable."""

    A: IntMat
    b: IntVec
    varspec: Tuple[VarSpec, ...]

    def __post_init__(self):
        if len(self.b) != self.A.d:
            raise DimensionError(f"rhs has {len(self.b)} entries but the matrix has {self.A.d} rows")
        if len(self.varspec) != self.A.n:
            raise DimensionError(f"{len(self.varspec)} variable constraints for {self.A.n} variables")


# -- Hermite normal form ---------------------------------------------------------


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x, y, g = igcdex(a, b)
    return int(x), int(y), int(g)


def _combine(a: int, u: List[int], b: int, v: List[int]) -> List[int]:
    return [a * x + b * y for x, y in zip(u, v)]


def _column_hnf(nrows: int, columns: Sequence[Sequence[int]]):
    """Column-style HNF by unimodular column operations.

    Returns (H columns, U columns, pivots) where pivots lists (row, column)
    pairs in increasing order; columns at index >= len(pivots) of H are zero
    and the matching columns of U span the integer kernel.
    """
    n = len(columns)
    cols = [list(c) for c in columns]
    ucols = [[int(i == j) for i in range(n)] for j in range(n)]
    pivots: List[Tuple[int, int]] = []
    piv = 0
    for i in range(nrows):
        if piv == n:
            break
        for j in range(piv + 1, n):
            b = cols[j][i]
            if b == 0:
                continue
            a = cols[piv][i]
            if a == 0:
                cols[piv], cols[j] = cols[j], cols[piv]
                ucols[piv], ucols[j] = ucols[j], ucols[piv]
                continue
            x, y, g = _xgcd(a, b)
            p, q = a // g, b // g
            cols[piv], cols[j] = _combine(x, cols[piv], y, cols[j]), _combine(p, cols[j], -q, cols[piv])
            ucols[piv], ucols[j] = _combine(x, ucols[piv], y, ucols[j]), _combine(p, ucols[j], -q, ucols[piv])
        pv = cols[piv][i]
        if pv == 0:
            continue
        if pv < 0:
            cols[piv] = [-a for a in cols[piv]]
            ucols[piv] = [-a for a in ucols[piv]]
            pv = -pv
        for j in range(piv):
            f = cols[j][i] // pv
            if f:
                cols[j] = _combine(1, cols[j], -f, cols[piv])
                ucols[j] = _combine(1, ucols[j], -f, ucols[piv])
        pivots.append((i, piv))
        piv += 1
    return cols, ucols, pivots


def hnf(M: IntMat) -> Tuple[IntMat, IntMat]:
    """Column Hermite normal form.

    Args:
        M: d x n integer matrix

    Returns:
        (H, U) with H = M U, U unimodular, H in column echelon form with
        positive pivots and entries left of each pivot reduced into [0, pivot).
    """
    cols, ucols, _ = _column_hnf(M.d, M.columns())
    return IntMat.from_columns(cols, M.d), IntMat.from_columns(ucols, M.n)


def rank(M: IntMat) -> int:
    return len(_column_hnf(M.d, M.columns())[2])


def kernel_basis(M: IntMat) -> Tuple[IntVec, ...]:
    """Integer basis of {z in Z^n : M z = 0}."""
    _, ucols, pivots = _column_hnf(M.d, M.columns())
    return tuple(tuple(c) for c in ucols[len(pivots):])


class HermiteSolver:
    """Integer solver for gens·λ = b that keeps the HNF of ``gens`` around."""

    def __init__(self, gens: IntMat):
        self.gens = gens
        self._cols, self._ucols, self._pivots = _column_hnf(gens.d, gens.columns())

    def solve(self, b: Sequence[int]) -> Optional[IntVec]:
        if len(b) != self.gens.d:
            raise DimensionError(f"vector of length {len(b)} against {self.gens.d}-row generators")
        residual = list(b)
        coeffs = [0] * self.gens.n
        for row, col in self._pivots:
            pv = self._cols[col][row]
            if residual[row] % pv:
                return None
            c = residual[row] // pv
            if c:
                residual = _combine(1, residual, -c, self._cols[col])
                coeffs = _combine(1, coeffs, c, self._ucols[col])
        if any(residual):
            return None
        return tuple(coeffs)


def lattice_member(b: Sequence[int], gens: IntMat) -> Optional[IntVec]:
    """Coefficients expressing b in the integer column span of ``gens``.

    Args:
        b: Target vector of length gens.d
        gens: Generators as columns

    Returns:
        λ with gens·λ = b, or None when b is not in the lattice. Deterministic.
    """
    return HermiteSolver(gens).solve(b)


class IntLattice:
    """Integer lattice kept as an echelon basis.

    Basis vector t is zero before its pivot coordinate, pivots strictly
    increase and pivot entries are positive, so reducing pivot coordinates
    in order yields a unique representative per coset.
    """

    def __init__(self, dim: int, basis: Tuple[IntVec, ...], pivots: Tuple[int, ...]):
        self.dim = dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], dim: int) -> "IntLattice":
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != dim:
                raise DimensionError(f"generator of length {len(g)} in dimension {dim}")
        cols, _, pivots = _column_hnf(dim, gens)
        basis = tuple(tuple(cols[c]) for _, c in pivots)
        return cls(dim, basis, tuple(r for r, _ in pivots))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coefficients(self, vec: Sequence[int]) -> Optional[IntVec]:
        if len(vec) != self.dim:
            raise DimensionError(f"vector of length {len(vec)} in dimension {self.dim}")
        residual = list(vec)
        coeffs = []
        for h, p in zip(self.basis, self.pivots):
            if residual[p] % h[p]:
                return None
            c = residual[p] // h[p]
            coeffs.append(c)
            if c:
                residual = _combine(1, residual, -c, h)
        if any(residual):
            return None
        return tuple(coeffs)

    def __contains__(self, vec: Sequence[int]) -> bool:
        return self.coefficients(vec) is not None

    def reduce(self, vec: Sequence[int]) -> IntVec:
        """Canonical representative of vec + lattice (pivot coordinates in [0, pivot))."""
        out = list(vec)
        for h, p in zip(self.basis, self.pivots):
            f = out[p] // h[p]
            if f:
                out = _combine(1, out, -f, h)
        return tuple(out)

    def spans_rationally(self, vec: Sequence[int]) -> bool:
        """True iff some nonzero multiple of vec lies in the lattice."""
        extended = IntLattice.from_generators(list(self.basis) + [tuple(vec)], self.dim)
        return extended.rank == self.rank


# -- Graver bases and minimal coset elements ------------------------------------


def _reduce_by(s: IntVec, reducers: Sequence[IntVec]) -> IntVec:
    """Subtract reducers g ⊑ s until none applies."""
    changed = True
    while changed and any(s):
        changed = False
        for g in reducers:
            if sq_leq(g, s):
                s = sub(s, g)
                changed = True
                break
    return s


def _minimal_filter(vectors: Sequence[IntVec]) -> Tuple[IntVec, ...]:
    out = [v for v in vectors if not any(w != v and any(w) and sq_leq(w, v) for w in vectors)]
    return tuple(sorted(set(out)))


def graver_basis(generators: Iterable[Sequence[int]], dim: int) -> Tuple[IntVec, ...]:
    """⊑-minimal nonzero elements of the lattice spanned by ``generators``.

    Completion procedure: start from a symmetric basis, form sums of pairs
    that are not sign-compatible, reduce them by the current set and keep
    the nonzero remainders.
    """
    lattice = IntLattice.from_generators(generators, dim)
    basis: List[IntVec] = []
    for h in lattice.basis:
        basis.extend([h, neg(h)])
    if not basis:
        return ()
    known = set(basis)
    pending = deque((i, j) for i in range(len(basis)) for j in range(i))
    while pending:
        i, j = pending.popleft()
        f, g = basis[i], basis[j]
        if sign_compatible(f, g):
            continue
        s = _reduce_by(add(f, g), basis)
        if any(s) and s not in known:
            known.add(s)
            basis.append(s)
            t = len(basis) - 1
            pending.extend((t, j) for j in range(t))
    result = _minimal_filter(basis)
    logger.debug("graver basis in dimension %d: %d elements (%d before filtering)", dim, len(result), len(basis))
    return result


def minimal_coset_elements(x0: Sequence[int], graver: Sequence[IntVec]) -> Tuple[IntVec, ...]:
    """All ⊑-minimal elements of the coset x0 + L, L given by its Graver basis.

    Truncated completion: every reduced vector is minimal, and new minimal
    elements are reached as reduced sums of a known one and a Graver element.
    """
    start = _reduce_by(tuple(x0), graver)
    found = [start]
    seen = {start}
    queue = deque(add(start, g) for g in graver if not sign_compatible(start, g))
    while queue:
        s = _reduce_by(queue.popleft(), graver)
        if s in seen:
            continue
        seen.add(s)
        found.append(s)
        queue.extend(add(s, g) for g in graver if not sign_compatible(s, g))
    return tuple(sorted(found))


class ProjectedSolver:
    """Minimal solutions of A z = b projected onto a subset of coordinates.

    The constrained coordinates are compared with ⊑; the remaining ones are
    free and canonicalized modulo the kernel of their columns when lifting.
    """

    def __init__(self, A: IntMat, constrained: Sequence[int]):
        self.A = A
        self.constrained = tuple(constrained)
        cset = set(self.constrained)
        self.free = tuple(j for j in range(A.n) if j not in cset)
        self._free_cols = A.select_columns(self.free)
        self._full = HermiteSolver(A)
        self._free_solver = HermiteSolver(self._free_cols)
        self._free_kernel = IntLattice.from_generators(kernel_basis(self._free_cols), len(self.free))
        kernel = kernel_basis(A)
        self.graver = graver_basis([tuple(z[j] for j in self.constrained) for z in kernel], len(self.constrained))

    def project(self, z: Sequence[int]) -> IntVec:
        return tuple(z[j] for j in self.constrained)

    def minimal_points(self, b: Sequence[int]) -> Optional[Tuple[IntVec, ...]]:
        """Minimal elements (all orthants) of the projected solution set, None if A z = b is infeasible."""
        z0 = self._full.solve(b)
        if z0 is None:
            return None
        return minimal_coset_elements(self.project(z0), self.graver)

    def lift(self, x: Sequence[int], b: Sequence[int]) -> IntVec:
        """Complete projected point x to a solution z with canonical free part."""
        rest = tuple(bi - sum(self.A.rows[i][j] * xj for j, xj in zip(self.constrained, x)) for i, bi in enumerate(b))
        y = self._free_solver.solve(rest)
        if y is None:
            raise InfeasibleError(f"projected point {tuple(x)} does not lift to a solution")
        y = self._free_kernel.reduce(y)
        z = [0] * self.A.n
        for j, xj in zip(self.constrained, x):
            z[j] = xj
        for j, yj in zip(self.free, y):
            z[j] = yj
        return tuple(z)


def minimal_solutions(system: DioSystem) -> Tuple[IntVec, ...]:
    """⊑-minimal solutions over the constrained coordinates.

    One representative per class modulo the free-coordinate solution
    lattice, free parts canonical. For b = 0 this is the Hilbert basis of
    the constrained region (0 excluded).

    Minimality is always well defined: ⊑ on the constrained coordinates
    is well-founded, and the free-coordinate kernel is quotiented out
    before comparing, so there is no unpointed case to report.

    Raises:
        InfeasibleError: an inhomogeneous system without any integer solution
    """
    constrained = [j for j, spec in enumerate(system.varspec) if spec.constrained]
    solver = ProjectedSolver(system.A, constrained)
    specs = [system.varspec[j] for j in constrained]

    def admitted(x: IntVec) -> bool:
        return all(spec.admits(a) for spec, a in zip(specs, x))

    if is_zero(system.b):
        points = [g for g in solver.graver if admitted(g)]
    else:
        candidates = solver.minimal_points(system.b)
        if candidates is None:
            raise InfeasibleError(f"A z = {system.b} has no integer solution")
        points = [x for x in candidates if admitted(x)]
    return tuple(sorted(solver.lift(x, system.b) for x in points))


def min_coeff_in_coset(A: IntMat, k: int, lattice_gens: IntMat) -> Optional[Tuple[int, IntVec]]:
    """Smallest positive λ_k with λ_k A_k + Σ_{i>k} λ_i A_i in the lattice.

    ``k`` is 1-based. The feasible λ_k form a subgroup gZ, read off the
    kernel of [A_k | A_{k+1..n} | lattice_gens].

    Returns:
        (λ*, s) with s = λ* A_k + Σ_{i>k} λ_i A_i for one optimal solution,
        or None when only λ_k = 0 is feasible.
    """
    if not 1 <= k <= A.n:
        raise DimensionError(f"column index {k} outside 1..{A.n}")
    if lattice_gens.d != A.d:
        raise DimensionError(f"lattice generators have {lattice_gens.d} rows, matrix has {A.d}")
    block = A.select_columns(range(k - 1, A.n)).hstack(lattice_gens)
    kernel = kernel_basis(block)
    g, combo = 0, zero(block.n)
    for z in kernel:
        if z[0] == 0:
            continue
        if g == 0:
            g, combo = z[0], z
            continue
        x, y, h = _xgcd(g, z[0])
        g, combo = h, add(scale(x, combo), scale(y, z))
    if g == 0:
        return None
    if g < 0:
        g, combo = -g, neg(combo)
    trailing = A.n - k + 1
    s = zero(A.d)
    for offset in range(trailing):
        if combo[offset]:
            s = add(s, scale(combo[offset], A.column(k - 1 + offset)))
    return g, s

