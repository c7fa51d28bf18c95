"""Pairwise distinct values, filtered by forward checking."""
from typing import Sequence

from backjump.kernel.events import Event, Outcome
from backjump.kernel.state import Kernel
from backjump.propagation.propagator import Propagator, Rule, bounds

FAILURE = Outcome.FAILURE
CHANGED = Outcome.CHANGED


class AllDifferent(Propagator):
    """When a variable is fixed to a, a is removed from every other variable of the scope."""

    kind = "alldifferent"

    def __init__(self, pid: int, variables: Sequence[int]):
        super().__init__(pid, list(dict.fromkeys(variables)))

    def filter(self, kernel: Kernel) -> bool:
        scope = self.scope
        cause = self.cause
        done: set[int] = set()
        progress = True
        while progress:
            progress = False
            for x in scope:
                if x in done or not kernel.is_fixed(x):
                    continue
                done.add(x)
                a = kernel.lb(x)
                for y in scope:
                    if y == x:
                        continue
                    out = kernel.remove_value(y, a, cause)
                    if out is FAILURE:
                        return False
                    if out is CHANGED:
                        progress = True
        return True

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        values = [assignment[v] for v in self.scope]
        return len(set(values)) == len(values)

    def _fixed_to(self, kernel: Kernel, var: int, values) -> list[Rule]:
        return [bounds(x) for x in self.scope
                if x != var and kernel.is_fixed(x) and kernel.lb(x) in values]

    def eschema(self, kernel: Kernel, event: Event) -> list[Rule]:
        return self._fixed_to(kernel, event.var, {event.removed_value()})

    def wipe_rules(self, kernel: Kernel, var: int) -> list[Rule]:
        return self._fixed_to(kernel, var, set(kernel.values(var)))
