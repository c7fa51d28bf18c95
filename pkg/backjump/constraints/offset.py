"""Binary offset constraints: x = y + c, x ≠ y + c and x ≤ y + c."""
from typing import Sequence

from backjump.kernel.events import Event, Outcome
from backjump.kernel.state import Kernel
from backjump.models.model import InvalidModelError
from backjump.propagation.propagator import Propagator, Rule, bounds, lower, removed, upper

FAILURE = Outcome.FAILURE
CHANGED = Outcome.CHANGED


class _Offset(Propagator):

    def __init__(self, pid: int, x: int, y: int, c: int):
        if x == y:
            raise InvalidModelError(f"{self.kind} over a repeated variable v{x}")
        super().__init__(pid, (x, y))
        self.x = x
        self.y = y
        self.c = c

    def __repr__(self) -> str:
        return f"{self.kind}#{self.id}(v{self.x}, v{self.y}, {self.c})"


class EqOffset(_Offset):
    """x = y + c, arc consistent. Values are removed one by one so each event loses exactly one support."""

    kind = "eq"

    def filter(self, kernel: Kernel) -> bool:
        x, y, c, cause = self.x, self.y, self.c, self.cause
        changed = True
        while changed:
            changed = False
            for a in kernel.values(x):
                if not kernel.contains(y, a - c):
                    out = kernel.remove_value(x, a, cause)
                    if out is FAILURE:
                        return False
                    changed = changed or out is CHANGED
            for b in kernel.values(y):
                if not kernel.contains(x, b + c):
                    out = kernel.remove_value(y, b, cause)
                    if out is FAILURE:
                        return False
                    changed = changed or out is CHANGED
        return True

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        return assignment[self.x] == assignment[self.y] + self.c

    def _support_rule(self, kernel: Kernel, var: int, value: int) -> list[Rule]:
        # the single support of var=value on the other side
        if var == self.x:
            other, support = self.y, value - self.c
        else:
            other, support = self.x, value + self.c
        if kernel.domains[other].initially_contains(support):
            return [removed(other, support)]
        return []

    def eschema(self, kernel: Kernel, event: Event) -> list[Rule]:
        return self._support_rule(kernel, event.var, event.removed_value())

    def wipe_rules(self, kernel: Kernel, var: int) -> list[Rule]:
        rules = []
        for a in kernel.values(var):
            rules.extend(self._support_rule(kernel, var, a))
        return rules


class NeqOffset(_Offset):
    """x ≠ y + c: once one side is fixed, its image is removed from the other."""

    kind = "neq"

    def filter(self, kernel: Kernel) -> bool:
        x, y, c, cause = self.x, self.y, self.c, self.cause
        while True:
            progress = False
            if kernel.is_fixed(x):
                out = kernel.remove_value(y, kernel.lb(x) - c, cause)
                if out is FAILURE:
                    return False
                progress = out is CHANGED
            if kernel.is_fixed(y):
                out = kernel.remove_value(x, kernel.lb(y) + c, cause)
                if out is FAILURE:
                    return False
                progress = progress or out is CHANGED
            if not progress:
                return True

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        return assignment[self.x] != assignment[self.y] + self.c

    def _other(self, var: int) -> int:
        return self.y if var == self.x else self.x

    def eschema(self, kernel: Kernel, event: Event) -> list[Rule]:
        return [bounds(self._other(event.var))]

    def wipe_rules(self, kernel: Kernel, var: int) -> list[Rule]:
        return [bounds(self._other(var))]


class LeqOffset(_Offset):
    """x ≤ y + c, bounds consistent in a single pass."""

    kind = "leq"

    def filter(self, kernel: Kernel) -> bool:
        x, y, c, cause = self.x, self.y, self.c, self.cause
        if kernel.update_upper(x, kernel.ub(y) + c, cause) is FAILURE:
            return False
        return kernel.update_lower(y, kernel.lb(x) - c, cause) is not FAILURE

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        return assignment[self.x] <= assignment[self.y] + self.c

    def eschema(self, kernel: Kernel, event: Event) -> list[Rule]:
        # x only loses its top (from ub(y)), y only its bottom (from lb(x))
        if event.var == self.x:
            return [upper(self.y)]
        return [lower(self.x)]

    def wipe_rules(self, kernel: Kernel, var: int) -> list[Rule]:
        if var == self.x:
            return [upper(self.y)]
        return [lower(self.x)]
