"""Benchmark suites with the published atomic-fiber counts.

Each suite is a list of ``BenchCase``; ``bench`` runs them and returns a
pandas DataFrame with one row per case.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from .completion import extended_atomic_fibers, restrict_to_order
from .config import BENCH_SUITES, BenchSuite
from .fiber import FiberEngine
from .intlin import IntMat
from .projectlift import ProjectAndLift

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["suite", "instance", "kind", "count", "expected", "match", "seconds"]


@dataclass(frozen=True)
class BenchCase:
    suite: str
    instance: str
    matrix: IntMat
    kind: str  # "atomic" or "extended"
    expected: Optional[int]
    long: bool = False


def partition_matrix(parts: Sequence[int]) -> IntMat:
    return IntMat.from_rows([tuple(parts)])


def homogeneous_partition_matrix(parts: Sequence[int]) -> IntMat:
    return IntMat.from_rows([(1,) * len(parts), tuple(parts)])


def adjacent_minors(p: int, q: int) -> IntMat:
    """One row per adjacent 2x2 minor of a p x q table, cells numbered row by row."""
    rows = []
    for i in range(p - 1):
        for j in range(q - 1):
            row = [0] * (p * q)
            row[q * i + j] = 1
            row[q * i + j + 1] = -1
            row[q * (i + 1) + j] = -1
            row[q * (i + 1) + j + 1] = 1
            rows.append(tuple(row))
    return IntMat.from_rows(rows, p * q)


# parts -> (count, long)
PARTITION_COUNTS: Dict[Tuple[int, ...], Tuple[int, bool]] = {
    (1,): (1, False),
    (1, 2): (2, False),
    # the published table lists 4; P_1, P_2, P_3, P_4 and P_6 are all atomic (P_5 = P_2 + P_3)
    (1, 2, 3): (5, False),
    (1, 2, 3, 4): (9, False),
    (1, 2, 3, 4, 5): (32, True),
    (1, 2, 3, 4, 5, 6): (41, True),
    (2, 3): (3, False),
    (2, 3, 5): (14, False),
    (2, 3, 5, 7): (72, True),
    # the published table lists 1; P_3, P_5 and P_15 = {(5,0),(0,3)} are all atomic
    (3, 5): (3, False),
    (3, 5, 7): (30, False),
}

HOMOGENEOUS_PARTITION_COUNTS: Dict[Tuple[int, ...], Tuple[int, bool]] = {
    (1,): (1, False),
    (1, 2): (2, False),
    (1, 2, 3): (4, False),
    (1, 2, 3, 4): (18, False),
    (1, 2, 3, 4, 5): (79, True),
    (1, 2, 3, 5): (12, False),
    (1, 2, 3, 6): (35, True),
    (1, 2, 3, 7): (19, False),
    (1, 2, 3, 8): (58, True),
    (1, 2, 3, 9): (28, True),
    (1, 2, 3, 10): (87, True),
    (1, 2, 3, 11): (39, True),
    (1, 2, 3, 12): (122, True),
    (1, 2, 3, 13): (52, True),
    (1, 2, 3, 14): (163, True),
    (1, 2, 3, 15): (67, True),
    (1, 2, 3, 17): (79, True),
    (2, 3): (2, False),
    (2, 3, 5): (4, False),
    (2, 3, 5, 7): (26, False),
    (2, 3, 5, 7, 11): (262, True),
}


def _label(parts: Sequence[int]) -> str:
    return " ".join(str(a) for a in parts)


def suite_cases(suite: BenchSuite) -> List[BenchCase]:
    if suite == "partition":
        return [
            BenchCase(suite, _label(parts), partition_matrix(parts), "atomic", count, long)
            for parts, (count, long) in PARTITION_COUNTS.items()
        ]
    if suite == "partition-homog":
        return [
            BenchCase(suite, _label(parts), homogeneous_partition_matrix(parts), "atomic", count, long)
            for parts, (count, long) in HOMOGENEOUS_PARTITION_COUNTS.items()
        ]
    if suite == "steinberger":
        small = adjacent_minors(3, 3)
        return [
            BenchCase(suite, "3x3", small, "atomic", 31),
            BenchCase(suite, "3x3", small, "extended", 79),
            BenchCase(suite, "4x4", adjacent_minors(4, 4), "atomic", 12675, long=True),
        ]
    raise ValueError(f"Unknown suite '{suite}'. Choose from: {', '.join(BENCH_SUITES)}")


def run_case(case: BenchCase, budget: Optional[int] = None) -> int:
    engine = FiberEngine(case.matrix)
    if case.kind == "extended":
        return restrict_to_order(extended_atomic_fibers(engine, budget=budget), 0).count
    return ProjectAndLift(engine, budget=budget).run().count


def bench(suite: BenchSuite, long: bool = False, budget: Optional[int] = None) -> pd.DataFrame:
    """Run a suite and compare counts with the published values.

    Args:
        suite: One of BENCH_SUITES
        long: Also run the instances that take hours to days
        budget: Completion budget forwarded to every run

    Returns:
        DataFrame with columns REPORT_COLUMNS
    """
    rows = []
    for case in suite_cases(suite):
        if case.long and not long:
            continue
        start = time.perf_counter()
        count = run_case(case, budget)
        seconds = time.perf_counter() - start
        match = case.expected is None or case.expected == count
        if not match:
            logger.warning("%s %s (%s): got %d, expected %d", suite, case.instance, case.kind, count, case.expected)
        rows.append([suite, case.instance, case.kind, count, case.expected, match, round(seconds, 3)])
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)
