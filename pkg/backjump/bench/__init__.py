from backjump.bench.runner import (
    collect_instances, pairwise_speedups, reports_to_frame, run_bench, run_cell, summarize, write_csv,
)

__all__ = [
    "collect_instances", "pairwise_speedups", "reports_to_frame", "run_bench", "run_cell",
    "summarize", "write_csv",
]
