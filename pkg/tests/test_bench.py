import csv
import io

import pytest

from pecc.bench import COLUMNS, BenchSpec, run_bench, start_layout
from pecc.gbo import hessian_entries


def test_rows_and_accounting():
    rep = run_bench(BenchSpec([12, 20], [1, 5], ["sector", "fence"], runs_per_cell=2, seed=1))
    assert len(rep.rows) == 8
    for r in rep.rows:
        assert r.hessian_entries == hessian_entries(r.n, r.k)
        assert r.mean_time_s > 0 and r.mean_energy >= 0
    assert next(r for r in rep.rows if r.n == 20 and r.k == 5).hessian_entries == 4 * 20 * 20 // 5


def test_skips_k_above_n():
    rep = run_bench(BenchSpec([3], [1, 4], runs_per_cell=1))
    assert [(r.n, r.k) for r in rep.rows] == [(3, 1)]
    assert rep.skipped == [(3, 4, "sector")]


def test_csv_stable_apart_from_time():
    spec = BenchSpec([15], [1, 3], ["sector", "random"], runs_per_cell=2, seed=4)

    def table(rep):
        rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
        for r in rows:
            del r["mean_time_s"]
        return rows

    a, b = run_bench(spec), run_bench(spec)
    assert list(csv.DictReader(io.StringIO(a.to_csv())).fieldnames) == list(COLUMNS)
    assert table(a) == table(b)


def test_start_layouts_shared_across_cells():
    a, _ = start_layout(30, 5.0, 7, 2)
    b, _ = start_layout(30, 5.0, 7, 2)
    c, _ = start_layout(30, 5.0, 7, 3)
    assert (a == b).all() and not (a == c).all()


def test_spec_validation():
    with pytest.raises(ValueError):
        BenchSpec([], [1])
    with pytest.raises(ValueError):
        BenchSpec([10], [1], runs_per_cell=0)
    with pytest.raises(ValueError):
        BenchSpec([10], [1], ["spiral"])
