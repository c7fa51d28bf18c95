"""Deterministic variable/value selection."""
from typing import Optional

from backjump.kernel.state import Kernel
from backjump.models.report import Branching


def select_variable(kernel: Kernel, branching: Branching) -> Optional[int]:
    """
    Next variable to branch on, or None when every variable is fixed.

    mindom picks the smallest domain, ties broken by lowest index; input picks
    the first unfixed variable in declaration order.
    """
    domains = kernel.domains
    if branching == Branching.input:
        for v, d in enumerate(domains):
            if d.size > 1:
                return v
        return None
    best = None
    best_size = 0
    for v, d in enumerate(domains):
        size = d.size
        if size > 1 and (best is None or size < best_size):
            best, best_size = v, size
            if size == 2:
                break
    return best


def select_value(kernel: Kernel, var: int) -> int:
    return kernel.lb(var)
