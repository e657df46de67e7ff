import pytest

from src.atomfib.completion import (
    AtomicFiberSet,
    default_generators,
    extended_atomic_fibers,
    normal_form,
    partially_extended_atomic_fibers,
    restrict_to_order,
    rhs_sort_key,
)
from src.atomfib.domains import MonoidContext
from src.atomfib.errors import BudgetExceeded
from src.atomfib.fiber import FiberEngine
from src.atomfib.intlin import IntMat


@pytest.fixture
def unit_engine() -> FiberEngine:
    return FiberEngine(IntMat.from_rows([(1,)]))


def test_rhs_sort_key():
    rhs = [(3, 0), (0, 3), (2, 4), (1, 2), (-1, -2)]
    assert sorted(rhs, key=rhs_sort_key) == [(-1, -2), (0, 3), (1, 2), (3, 0), (2, 4)]


def test_default_generators(twisted_cubic):
    gens = default_generators(twisted_cubic)
    assert gens == [(3, 0), (-3, 0), (2, 1), (-2, -1), (1, 2), (-1, -2), (0, 3), (0, -3)]


def test_normal_form(unit_engine):
    # with A = [1] every extended fiber is a single point
    assert normal_form(unit_engine, (5,), [(1,)]) == (0,)
    assert normal_form(unit_engine, (5,), [(2,)]) == (1,)
    assert normal_form(unit_engine, (-4,), [(0,), (1,), (-2,)]) == (0,)
    assert normal_form(unit_engine, (0,), [(1,)]) == (0,)


@pytest.mark.parametrize("rows", [[(1,)], [(2, 3)], [(1, -1)]])
def test_normal_form_is_idempotent(rows):
    engine = FiberEngine(IntMat.from_rows(rows))
    reducers = default_generators(engine.matrix)
    for s in range(-9, 10):
        once = normal_form(engine, (s,), reducers)
        assert normal_form(engine, once, reducers) == once


@pytest.mark.slow
def test_normal_form_is_idempotent_on_twisted_cubic(twisted_cubic_engine, twisted_cubic):
    reducers = default_generators(twisted_cubic)
    for s in [(8, 7), (6, 6), (9, 6), (-3, 6), (4, -1)]:
        once = normal_form(twisted_cubic_engine, s, reducers)
        assert normal_form(twisted_cubic_engine, once, reducers) == once


def test_extended_atomic_fibers_of_unit(unit_engine):
    fibers = extended_atomic_fibers(unit_engine)
    assert isinstance(fibers, AtomicFiberSet)
    assert fibers.order == 0
    assert fibers.rhs == ((-1,), (1,))
    assert fibers.provenance == "completion"
    assert not fibers.neutral
    assert fibers.count == 2
    assert fibers.stats["candidates"] > 0


def test_restrict_unit_to_full_order(unit_engine):
    fibers = restrict_to_order(extended_atomic_fibers(unit_engine), 1)
    assert fibers.rhs == ((1,),)
    assert fibers.count == 1
    assert fibers.provenance == "completion+restrict"
    assert (1,) in fibers
    assert list(fibers) == [(1,)]


def test_partially_extended_matches_restrict(unit_engine):
    assert partially_extended_atomic_fibers(unit_engine, 1).rhs == ((1,),)
    assert partially_extended_atomic_fibers(unit_engine, 0).rhs == ((-1,), (1,))


def test_restrict_rejects_bad_orders(unit_engine):
    fibers = extended_atomic_fibers(unit_engine)
    with pytest.raises(ValueError):
        restrict_to_order(fibers, 2)
    with pytest.raises(ValueError):
        restrict_to_order(restrict_to_order(fibers, 1), 1)


def test_completion_needs_a_lattice(twisted_cubic, twisted_cubic_engine):
    monoid = MonoidContext(twisted_cubic, IntMat.from_columns([(3, 0), (0, 3)], 2))
    with pytest.raises(ValueError):
        extended_atomic_fibers(twisted_cubic_engine, monoid)


def test_budget_exceeded(unit_engine):
    with pytest.raises(BudgetExceeded):
        extended_atomic_fibers(unit_engine, budget=1)


def test_neutral_counted_for_infinite_q0():
    # kernel (1, 1): Q_0 is infinite at every order
    engine = FiberEngine(IntMat.from_rows([(1, -1)]))
    fibers = extended_atomic_fibers(engine)
    assert fibers.neutral
    assert fibers.count == len(fibers.rhs) + 1


def test_to_dict(unit_engine):
    data = restrict_to_order(extended_atomic_fibers(unit_engine), 1).to_dict()
    assert data["matrix"] == [[1]]
    assert data["order"] == 1
    assert data["rhs_domain"] == "lattice"
    assert data["count"] == 1
    assert data["neutral"] is False
    assert data["rhs"] == [[1]]
    assert data["fibers"] == [{"rhs": [1], "order": 1, "finite": True, "elements": [[1]]}]
    assert "fibers" not in restrict_to_order(extended_atomic_fibers(unit_engine), 1).to_dict(with_fibers=False)


@pytest.mark.slow
def test_twisted_cubic_atomic_by_completion(twisted_cubic_engine, twisted_cubic_atoms):
    fibers = restrict_to_order(extended_atomic_fibers(twisted_cubic_engine), 4)
    assert list(fibers.rhs) == twisted_cubic_atoms
    assert fibers.count == 18


@pytest.mark.slow
def test_steinberger_3x3_extended(steinberger_3x3):
    fibers = restrict_to_order(extended_atomic_fibers(FiberEngine(steinberger_3x3)), 0)
    # the neutral rhs counts because Q_0 is infinite
    assert fibers.neutral
    assert fibers.count == 79
