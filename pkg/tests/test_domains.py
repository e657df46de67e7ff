from itertools import product

import numpy as np
import pytest

from src.atomfib.domains import (
    LatticeContext,
    MonoidContext,
    SbarContext,
    member,
    preceq,
    refine_cover,
    sbar_member,
)
from src.atomfib.errors import CoverTooLarge, DimensionError
from src.atomfib.intlin import IntMat


def _monoid(rows, generators) -> MonoidContext:
    matrix = IntMat.from_rows(rows)
    return MonoidContext(matrix, IntMat.from_columns(generators, matrix.d))


@pytest.fixture
def twisted_lattice(twisted_cubic) -> LatticeContext:
    return LatticeContext.column_lattice(twisted_cubic)


def test_column_lattice_membership(twisted_lattice, twisted_cubic):
    assert twisted_lattice.kind == "lattice"
    assert twisted_lattice.is_lattice
    coeffs = twisted_lattice.member((1, 2))
    assert coeffs is not None
    assert twisted_lattice.generators.mul_vec(coeffs) == (1, 2)
    assert twisted_lattice.member((1, 0)) is None
    assert member(twisted_lattice, (-3, 0)) is not None


def test_generator_dimension_mismatch(twisted_cubic):
    with pytest.raises(DimensionError):
        LatticeContext(twisted_cubic, IntMat.from_rows([(1, 0)]))
    with pytest.raises(DimensionError):
        MonoidContext(twisted_cubic, IntMat.from_rows([(1,)]))


def test_rhs_length_checked(twisted_lattice):
    with pytest.raises(DimensionError):
        twisted_lattice.member((1, 2, 3))


def test_monoid_membership(twisted_cubic):
    ctx = MonoidContext(twisted_cubic, IntMat.from_columns([(1, 1), (2, 0)], 2))
    assert ctx.kind == "monoid"
    assert not ctx.is_lattice
    assert ctx.member((3, 1)) == (1, 1)
    assert ctx.member((0, 0)) == (0, 0)
    assert ctx.member((-1, -1)) is None

    even = MonoidContext(twisted_cubic, IntMat.from_columns([(2, 0)], 2))
    assert even.member((1, 0)) is None
    assert even.member((-2, 0)) is None
    assert even.member((4, 0)) == (2,)


def test_sbar_twisted_cubic(twisted_lattice):
    sbar = twisted_lattice.sbar(3)
    assert sbar.contains((0, 3))
    assert sbar.contains((0, -3))
    assert not sbar.contains((1, 2))
    assert sbar.preceq((2, 4), (2, 7))
    assert sbar.preceq((2, 7), (2, 4))
    assert not sbar.preceq((2, 4), (3, 3))
    assert sbar_member(sbar, (0, 6))
    assert preceq(sbar, (0, 0), (0, 3))


def test_sbar_is_everything_at_level_zero_for_column_lattice(twisted_lattice):
    sbar = twisted_lattice.sbar(0)
    assert sbar.contains((1, 2))
    assert not sbar.contains((1, 0))


def test_sbar_level_range(twisted_lattice):
    with pytest.raises(ValueError):
        SbarContext(twisted_lattice, 5)
    with pytest.raises(ValueError):
        SbarContext(twisted_lattice, -1)


def test_monoid_sbar_is_one_sided():
    ctx = _monoid([(1, 1)], [(1,)])
    sbar = ctx.sbar(1)
    assert sbar.preceq((0,), (2,))
    assert not sbar.preceq((2,), (0,))


def test_refine_cover_rejects_lattices(twisted_lattice):
    with pytest.raises(ValueError):
        refine_cover(twisted_lattice.sbar(0))


def test_refine_cover_trivial():
    # S̄^(0) = S̄^(1) = Z_+: the single class of 0 covers everything
    assert refine_cover(_monoid([(1, 1)], [(1,)]).sbar(0)) == ((0,),)


def test_refine_cover_two_classes():
    # S̄^(0) = Z_+, S̄^(1) = 2Z_+: the odd numbers need the shift 1
    assert refine_cover(_monoid([(1, 2)], [(1,)]).sbar(0)) == ((0,), (1,))


def test_refine_cover_does_not_exist():
    # S̄^(1) = 2Z_+ against S̄^(2) = {0}: infinitely many classes
    with pytest.raises(CoverTooLarge):
        refine_cover(_monoid([(2, 1)], [(2,)]).sbar(1))


def test_coefficient_lattice():
    ctx = _monoid([(1, 2)], [(1,)])
    coarse, fine = ctx.coefficient_lattice(0), ctx.coefficient_lattice(1)
    assert (1,) in coarse
    assert (1,) not in fine
    assert (2,) in fine
    assert ctx.coefficient_lattice(2).rank == 0


def test_hilbert_generators():
    ctx = _monoid([(1, 2)], [(1,)])
    assert ctx.hilbert_generators(0) == ((1,),)
    assert ctx.hilbert_generators(1) == ((2,),)
    assert ctx.hilbert_generators(2) == ()


def _box(radius: int, dim: int):
    return list(product(range(-radius, radius + 1), repeat=dim))


def test_member_is_closed_under_sums(twisted_cubic, twisted_lattice):
    monoid = MonoidContext(twisted_cubic, IntMat.from_columns([(1, 1), (2, 0)], 2))
    for ctx in (monoid, twisted_lattice):
        inside = [b for b in _box(3, 2) if member(ctx, b) is not None]
        assert (0, 0) in inside
        for b in inside:
            assert ctx.generators.mul_vec(member(ctx, b)) == b
            for c in inside:
                assert member(ctx, tuple(x + y for x, y in zip(b, c))) is not None, (b, c)


def test_lattice_membership_is_symmetric(twisted_lattice):
    for b in _box(4, 2):
        assert (member(twisted_lattice, b) is None) == (member(twisted_lattice, tuple(-a for a in b)) is None)


@pytest.mark.parametrize(
    "ctx_factory",
    [
        lambda A: LatticeContext.column_lattice(A),
        lambda A: MonoidContext(A, IntMat.from_columns([(1, 1), (2, 0), (0, 3)], 2)),
    ],
)
def test_sbar_levels_are_nested(twisted_cubic, ctx_factory):
    ctx = ctx_factory(twisted_cubic)
    for level in range(twisted_cubic.n):
        coarse, fine = ctx.sbar(level), ctx.sbar(level + 1)
        for b in _box(6, 2):
            if sbar_member(fine, b):
                assert sbar_member(coarse, b), (level, b)
    assert not sbar_member(ctx.sbar(twisted_cubic.n), (3, 0))
    assert sbar_member(ctx.sbar(twisted_cubic.n), (0, 0))


@pytest.mark.parametrize("level", [0, 1])
def test_refine_cover_covers_samples(level):
    # S̄^(0) = Z_+, S̄^(1) = 2Z_+, S̄^(2) = 4Z_+
    ctx = _monoid([(1, 2, 4)], [(1,)])
    coarse, fine = ctx.sbar(level), ctx.sbar(level + 1)
    cover = refine_cover(coarse)
    assert all(sbar_member(coarse, s) for s in cover)
    rng = np.random.default_rng(level)
    samples = [(int(a),) for a in rng.integers(0, 60, size=40)]
    for s in samples:
        if sbar_member(coarse, s):
            assert any(fine.preceq(c, s) for c in cover), s
