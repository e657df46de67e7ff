import pytest

from src.atomfib import bench as bench_module
from src.atomfib.bench import (
    REPORT_COLUMNS,
    adjacent_minors,
    bench,
    homogeneous_partition_matrix,
    partition_matrix,
    suite_cases,
)


def test_adjacent_minors_3x3():
    assert adjacent_minors(3, 3).rows == (
        (1, -1, 0, -1, 1, 0, 0, 0, 0),
        (0, 1, -1, 0, -1, 1, 0, 0, 0),
        (0, 0, 0, 1, -1, 0, -1, 1, 0),
        (0, 0, 0, 0, 1, -1, 0, -1, 1),
    )


def test_adjacent_minors_shape():
    m = adjacent_minors(4, 4)
    assert (m.d, m.n) == (9, 16)


def test_partition_matrices():
    assert partition_matrix((2, 3, 5)).rows == ((2, 3, 5),)
    assert homogeneous_partition_matrix((1, 2, 3, 4)).rows == ((1, 1, 1, 1), (1, 2, 3, 4))


def test_suite_cases():
    steinberger = suite_cases("steinberger")
    assert [(c.instance, c.kind, c.expected, c.long) for c in steinberger] == [
        ("3x3", "atomic", 31, False),
        ("3x3", "extended", 79, False),
        ("4x4", "atomic", 12675, True),
    ]
    partition = {c.instance: c.expected for c in suite_cases("partition")}
    assert partition["2 3"] == 3
    assert partition["1 2 3"] == 5
    assert partition["3 5"] == 3
    assert partition["3 5 7"] == 30
    homog = {c.instance: c.expected for c in suite_cases("partition-homog")}
    assert homog["1 2 3 4"] == 18
    with pytest.raises(ValueError):
        suite_cases("knapsack")


def test_bench_report(monkeypatch):
    monkeypatch.setattr(bench_module, "run_case", lambda case, budget=None: case.expected)
    report = bench("partition")
    assert list(report.columns) == REPORT_COLUMNS
    assert report["match"].all()
    assert not any(c.long and c.instance in set(report["instance"]) for c in suite_cases("partition"))
    assert len(bench("partition", long=True)) == len(suite_cases("partition"))


def test_bench_reports_mismatch(monkeypatch, caplog):
    monkeypatch.setattr(bench_module, "run_case", lambda case, budget=None: -1)
    report = bench("steinberger")
    assert not report["match"].any()
    assert "expected 31" in caplog.text


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["partition", "partition-homog", "steinberger"])
def test_published_counts(suite):
    report = bench(suite)
    assert report["match"].all(), report[~report["match"]].to_string()
