"""Tests for the benchmark harness and its CSV report."""
import sys
import os
import io
import shutil
import tempfile

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pandas as pd

from backjump.bench import collect_instances, pairwise_speedups, run_bench, summarize
from backjump.cli import EXIT_OK, EXIT_USAGE, run_cli
from backjump.frontend import gen_pigeonhole, gen_queens, print_model
from backjump.models import CSV_FIELDS, Engine, Status
from backjump.search import solve

HEADER = "instance,engine,status,nodes,fails,backjumps,max_jump,peak_depth,solutions,elapsed_ms,timed_out"


def three_models():
    return collect_instances(["queens:6", "pigeon:4,3", "randcsp:8,3,0.5,0.4,3"])


# ============================================================
# Harness
# ============================================================

def test_header_matches_columns():
    assert ",".join(CSV_FIELDS) == HEADER


def test_bench_rows_in_instance_major_order():
    df = run_bench(three_models(), [Engine.std, Engine.cbj], 60000)
    assert list(df.columns) == CSV_FIELDS
    assert len(df) == 6
    assert list(df["engine"]) == ["std", "cbj"] * 3
    assert list(df["instance"][::2]) == ["queens-6", "pigeon-4-3-0", "randcsp-8-3-0.5-0.4-3"]
    assert (df[df["instance"] == "pigeon-4-3-0"]["status"] == "UNSAT").all()
    assert (df[df["instance"] == "queens-6"]["status"] == "SAT").all()
    # decision runs never enumerate
    assert (df["solutions"] <= 1).all()


def test_bench_is_deterministic():
    models = three_models()
    engines = [Engine.std, Engine.cbj_i, Engine.dbt]
    first = run_bench(models, engines, 60000)
    second = run_bench(models, engines, 60000, workers=2)
    columns = ["instance", "engine", "status", "nodes", "fails", "backjumps", "max_jump", "peak_depth"]
    pd.testing.assert_frame_equal(first[columns], second[columns])


def test_timeout_marks_unknown():
    df = run_bench([gen_pigeonhole(9, 8)], [Engine.std], 1)
    row = df.iloc[0]
    assert row["status"] == Status.unknown.value and bool(row["timed_out"])


def test_shipped_instances():
    folder = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "instances")
    models = collect_instances([folder])
    assert [m.name for m in models] == ["pigeon-4-3-2", "queens-4", "send-more-money"]
    df = run_bench(models, [Engine.cbj, Engine.dbt], 60000)
    assert list(df["status"]) == ["UNSAT", "UNSAT", "SAT", "SAT", "SAT", "SAT"]
    result = solve(models[2], Engine.cbj_i)
    assert result.solution == {"s": 9, "e": 5, "n": 6, "d": 7, "m": 1, "o": 0, "r": 8, "y": 2}


def test_collect_instances_from_directory():
    folder = tempfile.mkdtemp()
    try:
        for name, model in (("b.mod", gen_queens(4)), ("a.mod", gen_pigeonhole(3, 2))):
            with open(os.path.join(folder, name), "w", encoding="utf-8") as f:
                f.write(print_model(model))
        with open(os.path.join(folder, "notes.txt"), "w", encoding="utf-8") as f:
            f.write("not a model")
        models = collect_instances([folder, "queens:1"])
        assert [m.name for m in models] == ["a", "b", "queens-1"]
    finally:
        shutil.rmtree(folder)


# ============================================================
# Summaries
# ============================================================

def frame(rows):
    return pd.DataFrame([dict(zip(CSV_FIELDS, r)) for r in rows], columns=CSV_FIELDS)


def test_summarize_counts_solved_only():
    df = frame([
        ("i1", "std", "SAT", 10, 5, 0, 0, 3, 1, 2.0, False),
        ("i1", "cbj", "SAT", 4, 2, 1, 2, 3, 1, 1.0, False),
        ("i2", "std", "UNKNOWN", 99, 50, 0, 0, 5, 0, 100.0, True),
        ("i2", "cbj", "UNSAT", 6, 3, 2, 3, 4, 0, 3.0, False),
    ])
    summary = summarize(df).set_index("engine")
    assert summary.loc["std", "instances"] == 2 and summary.loc["std", "solved"] == 1
    assert summary.loc["std", "mean_nodes"] == 10.0 and summary.loc["std", "total_ms"] == 2.0
    assert summary.loc["cbj", "solved"] == 2 and summary.loc["cbj", "backjumps"] == 3
    assert summary.loc["cbj", "mean_nodes"] == 5.0


def test_pairwise_speedups():
    df = frame([
        ("i1", "std", "SAT", 10, 5, 0, 0, 3, 1, 4.0, False),
        ("i1", "cbj", "SAT", 5, 2, 1, 2, 3, 1, 1.0, False),
        ("i2", "std", "UNSAT", 20, 9, 0, 0, 5, 0, 8.0, False),
        ("i2", "cbj", "UNSAT", 5, 3, 2, 3, 4, 0, 4.0, False),
        ("i3", "std", "UNKNOWN", 1, 1, 0, 0, 1, 0, 9.0, True),
        ("i3", "cbj", "SAT", 1, 1, 0, 0, 1, 1, 0.5, False),
    ])
    table = pairwise_speedups(df).set_index(["a", "b"])
    row = table.loc[("std", "cbj")]
    assert row["common"] == 2
    assert row["b_faster_pct"] == 100.0
    assert row["median_speedup"] == 3.0 and row["max_speedup"] == 4.0
    assert row["median_node_ratio"] == 3.0 and row["max_node_ratio"] == 4.0
    assert table.loc[("cbj", "std"), "b_faster_pct"] == 0.0


# ============================================================
# bench command
# ============================================================

def test_cli_bench_to_file():
    fd, path = tempfile.mkstemp(suffix=".csv")
    os.close(fd)
    try:
        out = io.StringIO()
        code = run_cli(["bench", "queens:5", "pigeon:4,3", "pigeon:3,3", "--engines", "std,cbj",
                        "--timeout", "60000", "--out", path], out)
        assert code == EXIT_OK
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
        assert lines[0] == HEADER and len(lines) == 7
        # the summary goes to stdout when the report has its own file
        assert "engine" in out.getvalue() and "solved" in out.getvalue()
    finally:
        os.remove(path)


def test_cli_bench_to_stdout():
    out = io.StringIO()
    code = run_cli(["bench", "queens:4", "--engines", "cbj-i"], out)
    assert code == EXIT_OK
    assert out.getvalue().splitlines()[0] == HEADER
    assert len(out.getvalue().splitlines()) == 2


def test_cli_bench_usage_errors():
    assert run_cli(["bench", "queens:4", "--engines", "fast"], io.StringIO()) == EXIT_USAGE
    assert run_cli(["bench", "cube:3"], io.StringIO()) == EXIT_USAGE


if __name__ == "__main__":
    from tests.runner import run_module
    sys.exit(run_module(globals(), "BENCH TESTS"))
