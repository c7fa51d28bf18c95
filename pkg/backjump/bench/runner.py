"""Benchmark harness: runs every (instance, engine) cell and assembles the report with pandas."""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from typing import Iterable, Sequence

import pandas as pd

from backjump.frontend.generators import generate
from backjump.frontend.parser import load_model
from backjump.models.model import ModelFile
from backjump.models.report import (
    CSV_FIELDS, Branching, Engine, EschemaMode, Goal, RunReport, Status,
)
from backjump.search.solver import SearchLimits, Solver

logger = logging.getLogger(__name__)

MODEL_SUFFIX = ".mod"


def collect_instances(sources: Iterable[str]) -> list[ModelFile]:
    """
    Resolve bench sources into models. A source is a directory (every *.mod file in
    it, sorted by name), a model file, or a generator spec such as queens:8.
    """
    models = []
    for source in sources:
        if os.path.isdir(source):
            for entry in sorted(os.listdir(source)):
                if entry.endswith(MODEL_SUFFIX):
                    models.append(load_model(os.path.join(source, entry)))
        elif os.path.isfile(source):
            models.append(load_model(source))
        else:
            models.append(generate(source))
    return models


def run_cell(model: ModelFile, engine: Engine, timeout_ms: int,
             branching: Branching = Branching.mindom,
             eschema_mode: EschemaMode = EschemaMode.specific) -> RunReport:
    """Solve one instance with one engine (decision goal); never raises on search outcomes."""
    solver = Solver(model, engine=engine, branching=branching, goal=Goal.decide,
                    limits=SearchLimits(timeout_ms=timeout_ms), eschema_mode=eschema_mode)
    result = solver.solve()
    report = RunReport.from_result(model.name or "model", Engine(engine), result)
    logger.info("%s / %s: %s in %.1f ms", report.instance, report.engine.value,
                report.status.value, report.elapsed_ms)
    return report


def _run_cell_args(args: tuple) -> RunReport:
    return run_cell(*args)


def run_bench(models: Sequence[ModelFile], engines: Sequence[Engine], timeout_ms: int,
              branching: Branching = Branching.mindom,
              eschema_mode: EschemaMode = EschemaMode.specific,
              workers: int = 1) -> pd.DataFrame:
    """One row per (instance, engine), in instance-major order whatever the worker count."""
    cells = [(m, Engine(e), timeout_ms, branching, eschema_mode) for m in models for e in engines]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_cell_args, cells))
    else:
        reports = [_run_cell_args(c) for c in cells]
    return reports_to_frame(reports)


def reports_to_frame(reports: Sequence[RunReport]) -> pd.DataFrame:
    rows = [r.csv_row() for r in reports]
    return pd.DataFrame(rows, columns=CSV_FIELDS)


def write_csv(df: pd.DataFrame, path: str):
    df.to_csv(path, index=False, columns=CSV_FIELDS)


def summarize(df: pd.DataFrame) -> pd.DataFrame:
    """Per engine: instances, solved count, mean nodes, total and mean time over solved instances."""
    solved = df[df["status"] != Status.unknown.value]
    summary = df.groupby("engine", sort=False).agg(instances=("instance", "count"))
    summary["solved"] = solved.groupby("engine", sort=False)["instance"].count()
    summary["mean_nodes"] = solved.groupby("engine", sort=False)["nodes"].mean().round(1)
    summary["total_ms"] = solved.groupby("engine", sort=False)["elapsed_ms"].sum().round(1)
    summary["backjumps"] = solved.groupby("engine", sort=False)["backjumps"].sum()
    summary = summary.fillna({"solved": 0, "mean_nodes": 0.0, "total_ms": 0.0, "backjumps": 0})
    summary["solved"] = summary["solved"].astype(int)
    summary["backjumps"] = summary["backjumps"].astype(int)
    return summary.reset_index()


def pairwise_speedups(df: pd.DataFrame, min_ms: float = 0.001) -> pd.DataFrame:
    """
    Compare every ordered engine pair (a, b) over the instances both solved.

    speedup is elapsed(a) / elapsed(b), so values above 1 mean b was faster;
    node_ratio is the same ratio on node counts.
    """
    solved = df[df["status"] != Status.unknown.value]
    time_table = solved.pivot_table(index="instance", columns="engine", values="elapsed_ms", aggfunc="first")
    node_table = solved.pivot_table(index="instance", columns="engine", values="nodes", aggfunc="first")
    engines = list(dict.fromkeys(df["engine"]))
    rows = []
    for a, b in permutations(engines, 2):
        if a not in time_table.columns or b not in time_table.columns:
            continue
        both = time_table[[a, b]].dropna()
        if both.empty:
            continue
        speedup = both[a].clip(lower=min_ms) / both[b].clip(lower=min_ms)
        nodes = node_table.loc[both.index, [a, b]]
        node_ratio = nodes[a].clip(lower=1) / nodes[b].clip(lower=1)
        rows.append({
            "a": a,
            "b": b,
            "common": len(both),
            "b_faster_pct": round(100.0 * float((both[b] < both[a]).mean()), 1),
            "median_speedup": round(float(speedup.median()), 3),
            "max_speedup": round(float(speedup.max()), 3),
            "median_node_ratio": round(float(node_ratio.median()), 3),
            "max_node_ratio": round(float(node_ratio.max()), 3),
        })
    columns = ["a", "b", "common", "b_faster_pct", "median_speedup", "max_speedup",
               "median_node_ratio", "max_node_ratio"]
    return pd.DataFrame(rows, columns=columns)
