from backjump.search.branching import select_value, select_variable
from backjump.search.solver import (
    Decision, PathEntry, SearchLimits, Solver, check_solution, replay_fails, solve,
)

__all__ = [
    "Decision", "PathEntry", "SearchLimits", "Solver", "check_solution", "replay_fails",
    "select_value", "select_variable", "solve",
]
