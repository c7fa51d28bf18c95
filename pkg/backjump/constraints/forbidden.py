"""Binary negative table: (x, y) must avoid a list of forbidden pairs."""
from typing import Iterable, Sequence

from backjump.kernel.events import Event, Outcome
from backjump.kernel.state import Kernel
from backjump.models.model import InvalidModelError
from backjump.propagation.propagator import Propagator, Rule, removed

FAILURE = Outcome.FAILURE
CHANGED = Outcome.CHANGED


class Forbidden(Propagator):
    """
    Arc consistent filtering of a negative table.

    A value keeps a support as long as the other variable holds some value not
    paired with it in the table. Values are removed one at a time, so the
    explanation of a removal is the removal of every support the value had in the
    other variable's initial domain.
    """

    kind = "forbidden"

    def __init__(self, pid: int, x: int, y: int, tuples: Iterable[tuple[int, int]]):
        if x == y:
            raise InvalidModelError(f"forbidden over a repeated variable v{x}")
        super().__init__(pid, (x, y))
        self.x = x
        self.y = y
        self.tuples = set(map(tuple, tuples))
        self.banned = {x: {}, y: {}}
        for a, b in self.tuples:
            self.banned[x].setdefault(a, set()).add(b)
            self.banned[y].setdefault(b, set()).add(a)

    def _other(self, var: int) -> int:
        return self.y if var == self.x else self.x

    def _revise(self, kernel: Kernel, var: int) -> Outcome:
        other = self._other(var)
        banned = self.banned[var]
        result = Outcome.UNCHANGED
        for a in kernel.values(var):
            bad = banned.get(a)
            if not bad:
                continue
            if all(b in bad for b in kernel.values(other)):
                out = kernel.remove_value(var, a, self.cause)
                if out is FAILURE:
                    return FAILURE
                result = CHANGED
        return result

    def filter(self, kernel: Kernel) -> bool:
        while True:
            first = self._revise(kernel, self.x)
            if first is FAILURE:
                return False
            second = self._revise(kernel, self.y)
            if second is FAILURE:
                return False
            if second is not CHANGED:
                return True

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        return (assignment[self.x], assignment[self.y]) not in self.tuples

    def _supports(self, kernel: Kernel, var: int, value: int) -> list[Rule]:
        other = self._other(var)
        bad = self.banned[var].get(value, ())
        initial = kernel.domains[other].dense
        return [removed(other, b) for b in initial if b not in bad]

    def eschema(self, kernel: Kernel, event: Event) -> list[Rule]:
        return self._supports(kernel, event.var, event.removed_value())

    def wipe_rules(self, kernel: Kernel, var: int) -> list[Rule]:
        rules = []
        for a in kernel.values(var):
            rules.extend(self._supports(kernel, var, a))
        return rules

    def __repr__(self) -> str:
        return f"{self.kind}#{self.id}(v{self.x}, v{self.y}, {len(self.tuples)} pairs)"
